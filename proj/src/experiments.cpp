#include "nearplane/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "nearplane/errors.hpp"

namespace nearplane {

std::optional<std::string> clamp_endpoint(LatticeParams& params) {
  const double c = std::cos(params.theta);
  if (params.rho >= 1.0 && std::abs(params.rho * c - 0.5) < 1e-9) {
    params.theta = std::acos(0.5 / params.rho) + kEndpointEpsilon;
    return "note: rho*cos(theta) = 1/2 is excluded; using theta = acos(1/(2 rho)) + 1e-6";
  }
  if (std::abs(c) < 1e-9) {
    params.theta = std::numbers::pi / 2 - kEndpointEpsilon;
    return "note: theta = pi/2 is excluded; using theta = pi/2 - 1e-6";
  }
  return std::nullopt;
}

std::vector<double> theta_grid(double rho, int points) {
  if (points < 1) throw InvalidParams("the theta grid needs at least one point");
  if (!(rho >= 1.0)) throw InvalidParams("rho must be >= 1");
  const double lo = std::acos(0.5 / rho) + kEndpointEpsilon;
  const double hi = std::numbers::pi / 2 - kEndpointEpsilon;
  if (!(hi > lo)) throw InvalidParams("empty theta range");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out.push_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
  }
  return out;
}

namespace {

ordered_json point_json(const Point2& p) { return ordered_json::array({p.x1, p.x2}); }
Point2 point_from(const ordered_json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

ordered_json geometry_to_json(const CellGeometry& g) {
  ordered_json j;
  j["rho"] = g.params.rho;
  j["theta"] = g.params.theta;
  j["rcos"] = g.params.rcos();
  j["t_m2"] = g.t_m2;
  j["t_m1"] = g.t_m1;
  j["t_1"] = g.t_1;
  j["t_2"] = g.t_2;
  j["tau_m1"] = g.tau_m1;
  j["tau_1"] = g.tau_1;
  j["L0"] = g.L0;
  j["L1"] = g.L1;
  j["L2"] = g.L2;
  j["L"] = g.L;
  j["H"] = g.H;
  j["H0"] = g.H0;
  j["H1"] = g.H1;
  j["H21"] = g.H21;
  j["H22"] = g.H22;
  j["pe_babai"] = babai_error_probability(g.params);
  ordered_json segs = ordered_json::array();
  for (const auto& s : g.boundary_segments) {
    ordered_json e;
    e["neighbor"] = ordered_json::array({s.neighbor.u1, s.neighbor.u2});
    e["normal"] = point_json(s.normal);
    e["offset"] = s.offset;
    e["horizontal_end"] = point_json(s.horizontal_end);
    e["vertical_end"] = point_json(s.vertical_end);
    e["slope"] = s.slope;
    segs.push_back(std::move(e));
  }
  j["boundary_segments"] = std::move(segs);
  return j;
}

CellGeometry geometry_from_json(const ordered_json& j) {
  CellGeometry g;
  g.params = {j.at("rho").get<double>(), j.at("theta").get<double>()};
  g.t_m2 = j.at("t_m2").get<double>();
  g.t_m1 = j.at("t_m1").get<double>();
  g.t_1 = j.at("t_1").get<double>();
  g.t_2 = j.at("t_2").get<double>();
  g.tau_m1 = j.at("tau_m1").get<double>();
  g.tau_1 = j.at("tau_1").get<double>();
  g.L0 = j.at("L0").get<double>();
  g.L1 = j.at("L1").get<double>();
  g.L2 = j.at("L2").get<double>();
  g.L = j.at("L").get<double>();
  g.H = j.at("H").get<double>();
  g.H0 = j.at("H0").get<double>();
  g.H1 = j.at("H1").get<double>();
  g.H21 = j.at("H21").get<double>();
  g.H22 = j.at("H22").get<double>();
  for (const auto& e : j.at("boundary_segments")) {
    BoundarySegment s;
    s.neighbor = {e.at("neighbor").at(0).get<long>(), e.at("neighbor").at(1).get<long>()};
    s.normal = point_from(e.at("normal"));
    s.offset = e.at("offset").get<double>();
    s.horizontal_end = point_from(e.at("horizontal_end"));
    s.vertical_end = point_from(e.at("vertical_end"));
    s.slope = e.at("slope").get<double>();
    g.boundary_segments.push_back(s);
  }
  return g;
}

namespace {

// Sizes that can actually be simulated for a rate match.
int capped(int n) { return std::clamp(n, 1, kExactSizeLimit); }

SweepRow analytic_row(double rho, double theta, double budget) {
  const LatticeParams p{rho, theta};
  SweepRow row;
  row.theta_rad = theta;
  row.rho = rho;
  const RateMatch m12 = pe_at_rate(p, Scheme::order12, budget);
  const RateMatch m21 = pe_at_rate(p, Scheme::order21, budget);
  row.pe12_below = m12.pe_below;
  row.pe12_interp = m12.pe_interp;
  row.pe21_below = m21.pe_below;
  row.pe21_interp = m21.pe_interp;
  row.rbar_bits = rbar_infinite(p);
  row.nbar_rounds = nbar_infinite(p);
  row.pe_babai = babai_error_probability(p);

  SweepEmpirical sizes;
  sizes.n2_12 = m12.asymptotic ? kExactSizeLimit : m12.below.n2;
  sizes.n1_12 = m12.asymptotic ? capped(optimal_n1(p, sizes.n2_12)) : m12.below.n1;
  sizes.n_21 = m21.asymptotic ? kExactSizeLimit : m21.below.n2;
  row.empirical = sizes;
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepOptions& opts) {
  const std::vector<double> grid = theta_grid(opts.rho, opts.points);
  std::vector<SweepRow> rows(grid.size());
  std::vector<std::exception_ptr> failures(grid.size());

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.size()); ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      rows[k] = analytic_row(opts.rho, grid[k], opts.budget);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  for (SweepRow& row : rows) {
    if (opts.trials == 0) {
      row.empirical.reset();
      continue;
    }
    SweepEmpirical& e = *row.empirical;
    SimConfig c;
    c.params = {row.rho, row.theta_rad};
    c.trials = opts.trials;
    c.seed = opts.seed;
    c.max_rounds = opts.max_rounds;
    c.scheme = SimScheme::order12;
    c.n1 = e.n1_12;
    c.n2 = e.n2_12;
    e.pe12 = simulate(c).pe;
    c.scheme = SimScheme::order21;
    c.n = e.n_21;
    e.pe21 = simulate(c).pe;
    c.scheme = SimScheme::babai_only;
    e.pe_babai = simulate(c).pe;
    c.scheme = SimScheme::infinite;
    const SimReport inf = simulate(c);
    e.rbar_bits = inf.bits;
    e.nbar_rounds = inf.rounds;
  }
  return rows;
}

std::vector<std::string> sweep_columns(bool empirical) {
  std::vector<std::string> cols = {"theta_rad",   "rho",       "pe12_below", "pe12_interp",
                                   "pe21_below",  "pe21_interp", "rbar_bits", "nbar_rounds",
                                   "pe_babai"};
  if (empirical) {
    for (const char* c : {"n1_12", "n2_12", "n_21", "emp_pe12", "emp_pe12_se", "emp_pe21", "emp_pe21_se",
                          "emp_pe_babai", "emp_pe_babai_se", "emp_rbar_bits", "emp_rbar_bits_se",
                          "emp_nbar_rounds", "emp_nbar_rounds_se"}) {
      cols.emplace_back(c);
    }
  }
  return cols;
}

std::vector<double> sweep_values(const SweepRow& r) {
  std::vector<double> v = {r.theta_rad,  r.rho,         r.pe12_below,  r.pe12_interp, r.pe21_below,
                           r.pe21_interp, r.rbar_bits, r.nbar_rounds, r.pe_babai};
  if (r.empirical) {
    const SweepEmpirical& e = *r.empirical;
    v.insert(v.end(), {static_cast<double>(e.n1_12), static_cast<double>(e.n2_12),
                       static_cast<double>(e.n_21), e.pe12.mean, e.pe12.std_error, e.pe21.mean,
                       e.pe21.std_error, e.pe_babai.mean, e.pe_babai.std_error, e.rbar_bits.mean,
                       e.rbar_bits.std_error, e.nbar_rounds.mean, e.nbar_rounds.std_error});
  }
  return v;
}

std::vector<TradeoffRow> tradeoff_table(const LatticeParams& params, Scheme scheme, int max_size,
                                        std::optional<double> budget) {
  validate(params);
  const std::vector<TradeoffPoint> curve =
      scheme == Scheme::order12 ? tradeoff_curve_12(params, max_size) : tradeoff_curve_21(params, max_size);
  double exponent = 0.0;
  double constant = 0.0;
  if (scheme == Scheme::order12) {
    exponent = rate_exponent_12(params);
    constant = asymptotic_constant_12(params);
  } else {
    const auto q = round1_distributions(params).q;
    exponent = 1.0 / (1.0 - q[1]);
    constant = asymptotic_constant_21(params);
  }
  std::vector<TradeoffRow> rows;
  rows.reserve(curve.size());
  int best = -1;
  for (const auto& p : curve) {
    TradeoffRow r;
    r.point = p;
    r.scaled_pe = p.pe * std::exp2(exponent * p.rate_bits);
    r.scaled_ratio = r.scaled_pe / constant;
    if (budget && p.rate_bits <= *budget) best = static_cast<int>(rows.size());
    rows.push_back(r);
  }
  if (best >= 0) rows[static_cast<std::size_t>(best)].at_budget = true;
  return rows;
}

namespace {

ordered_json estimate_json(const Estimate& e) {
  ordered_json j;
  j["mean"] = e.mean;
  j["stderr"] = e.std_error;
  return j;
}

ordered_json params_json(const LatticeParams& p) {
  ordered_json j;
  j["rho"] = p.rho;
  j["theta_rad"] = p.theta;
  j["theta_deg"] = p.theta * 180.0 / std::numbers::pi;
  j["rcos"] = p.rcos();
  return j;
}

ordered_json match_json(const RateMatch& m, Scheme s) {
  ordered_json j;
  j["pe_below"] = m.pe_below;
  j["pe_interp"] = m.pe_interp;
  if (s == Scheme::order12) j["n1"] = m.below.n1;
  j[s == Scheme::order12 ? "n2" : "n"] = m.below.n2;
  j["rate_bits"] = m.below.rate_bits;
  j["asymptotic"] = m.asymptotic;
  return j;
}

ordered_json coefficients_json(const LatticeParams& p, CoefficientVariant v, int n1, int n2) {
  const CellGeometry g = cell_geometry(p);
  const auto c = coefficients_12(p, v);
  ordered_json j;
  j["alpha1"] = c.alpha1;
  j["alpha2"] = c.alpha2;
  j["pe"] = c.alpha1 / n1 + c.alpha2 / n2;
  j["alpha2_L1_over_alpha1_L2"] = c.alpha2 * g.L1 / (c.alpha1 * g.L2);
  return j;
}

}  // namespace

ordered_json report_to_json(const SimConfig& config, const SimReport& r) {
  ordered_json j;
  j["scheme"] = to_string(config.scheme);
  j["params"] = params_json(config.params);
  switch (config.scheme) {
    case SimScheme::order12:
      j["n1"] = config.n1;
      j["n2"] = config.n2;
      break;
    case SimScheme::order21:
      j["n"] = config.n;
      break;
    case SimScheme::infinite:
      j["max_rounds"] = config.max_rounds;
      break;
    case SimScheme::babai_only:
      break;
  }
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["empirical_pe"] = estimate_json(r.pe);
  j["mean_bits"] = estimate_json(r.bits);
  j["mean_rounds"] = estimate_json(r.rounds);
  j["mean_bits_s1"] = estimate_json(r.bits_s1);
  j["mean_bits_s2"] = estimate_json(r.bits_s2);
  j["predicted_pe"] = r.predicted_pe;
  j["predicted_bits"] = r.predicted_bits;
  j["predicted_rounds"] = r.predicted_rounds;
  j["errors"] = r.errors;
  j["halted_errors"] = r.halted_errors;
  j["unhalted_count"] = r.unhalted_count;
  if (config.scheme == SimScheme::infinite) {
    j["corner_entries"] = r.corner_entries;
    j["extra_round_counts"] = r.extra_round_counts;
  }
  return j;
}

ordered_json analyze(const LatticeParams& p, const AnalyzeOptions& opts) {
  validate(p);
  ordered_json j;
  j["params"] = params_json(p);
  j["scheme"] = to_string(opts.scheme);
  j["pe_babai"] = babai_error_probability(p);

  SimConfig sim;
  sim.params = p;
  sim.scheme = opts.scheme;
  sim.n1 = opts.n1;
  sim.n2 = opts.n2;
  sim.n = opts.n;
  sim.trials = std::max<std::uint64_t>(opts.trials, 1);
  sim.seed = opts.seed;
  sim.max_rounds = opts.max_rounds;
  validate(sim);

  switch (opts.scheme) {
    case SimScheme::order12: {
      const Rate12 r = rate_12(p, opts.n1, opts.n2);
      j["n1"] = opts.n1;
      j["n2"] = opts.n2;
      j["pe"] = pe_12(p, opts.n1, opts.n2);
      j["rate"] = {{"h_u1", r.h_u1}, {"h_u2_given_u1", r.h_u2_given_u1}, {"total", r.total()}};
      j["coefficients"] = {
          {"boundary_spans", coefficients_json(p, CoefficientVariant::boundary_spans, opts.n1, opts.n2)},
          {"swapped_heights", coefficients_json(p, CoefficientVariant::swapped_heights, opts.n1, opts.n2)}};
      j["optimal_n1"] = optimal_n1(p, opts.n2);
      j["kappa"] = kappa_12(p);
      j["rate_exponent"] = rate_exponent_12(p);
      j["asymptotic_constant"] = asymptotic_constant_12(p);
      j["asymptotic_constant_probability_form"] = asymptotic_constant_12_probability_form(p);
      break;
    }
    case SimScheme::order21: {
      const Rate21 r = rate_21(p, opts.n);
      j["n"] = opts.n;
      j["pe"] = pe_21(p, opts.n);
      j["beta"] = beta_21(p);
      j["beta_geometric"] = beta_21_geometric(p);
      j["rate"] = {{"h_u2", r.h_u2}, {"h_u1_given_u2", r.h_u1_given_u2}, {"total", r.total()}};
      j["kappa"] = kappa_21(p);
      j["asymptotic_constant"] = asymptotic_constant_21(p);
      break;
    }
    case SimScheme::infinite: {
      const auto d = round1_distributions(p);
      j["pe"] = 0.0;
      j["q"] = std::vector<double>(d.q.probs().begin(), d.q.probs().end());
      j["p"] = std::vector<double>(d.p.probs().begin(), d.p.probs().end());
      j["rbar_bits"] = rbar_infinite(p);
      j["nbar_rounds"] = nbar_infinite(p);
      break;
    }
    case SimScheme::babai_only:
      j["pe"] = babai_error_probability(p);
      break;
  }

  if (opts.budget) {
    ordered_json b;
    b["rate_budget"] = *opts.budget;
    b["order12"] = match_json(pe_at_rate(p, Scheme::order12, *opts.budget), Scheme::order12);
    b["order21"] = match_json(pe_at_rate(p, Scheme::order21, *opts.budget), Scheme::order21);
    j["budget"] = std::move(b);
  }

  if (opts.trials > 0) {
    const SimReport rep = simulate(sim);
    j["simulation"] = report_to_json(sim, rep);
    if (opts.scheme == SimScheme::order12) {
      // Which coefficient assignment the simulation supports, at 3 standard errors.
      ordered_json matched = ordered_json::array();
      for (CoefficientVariant v : {CoefficientVariant::boundary_spans, CoefficientVariant::swapped_heights}) {
        const auto c = coefficients_12(p, v);
        const double predicted = c.alpha1 / opts.n1 + c.alpha2 / opts.n2;
        if (std::abs(rep.pe.mean - predicted) <= 3.0 * rep.pe.std_error) matched.push_back(to_string(v));
      }
      j["matched_variants"] = std::move(matched);
    }
  }
  return j;
}

}  // namespace nearplane

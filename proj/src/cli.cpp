#include "nearplane/cli.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "nearplane/errors.hpp"
#include "nearplane/experiments.hpp"
#include "nearplane/transcript_json.hpp"

namespace nearplane {

namespace {

struct LatticeFlags {
  double rho = 1.0;
  double theta_deg = 0.0;
  double theta_rad = 0.0;
  double rcos = 0.0;
  CLI::Option* deg = nullptr;
  CLI::Option* rad = nullptr;
  CLI::Option* rc = nullptr;

  void add_to(CLI::App& app) {
    app.add_option("--rho", rho, "Length ratio |v2|/|v1| (>= 1)")->capture_default_str();
    deg = app.add_option("--theta-deg", theta_deg, "Angle between the basis vectors, degrees");
    rad = app.add_option("--theta-rad", theta_rad, "Angle between the basis vectors, radians");
    rc = app.add_option("--rcos", rcos, "rho*cos(theta) in (0, 1/2); rho stays fixed");
    deg->excludes(rad)->excludes(rc);
    rad->excludes(rc);
  }

  LatticeParams resolve(std::ostream& err) const {
    LatticeParams p;
    p.rho = rho;
    if (deg->count() > 0) {
      p.theta = theta_deg * std::numbers::pi / 180.0;
    } else if (rad->count() > 0) {
      p.theta = theta_rad;
    } else if (rc->count() > 0) {
      if (!(rho > 0.0) || std::abs(rcos / rho) > 1.0) throw InvalidParams("--rcos must satisfy |rcos| <= rho");
      p.theta = std::acos(rcos / rho);
    } else {
      throw InvalidParams("one of --theta-deg, --theta-rad or --rcos is required");
    }
    if (const auto note = clamp_endpoint(p)) err << *note << '\n';
    validate(p);
    return p;
  }
};

struct SizeFlags {
  int n1 = 1;
  int n2 = 1;
  int n = 1;
  void add_to(CLI::App& app) {
    app.add_option("--n1", n1, "Bins on each of I_1 and I_-1 (order 12)")->capture_default_str();
    app.add_option("--n2", n2, "Bins on each of I_2 and I_-2 (order 12)")->capture_default_str();
    app.add_option("--n", n, "Bins on each of J_1 and J_-1 (order 21)")->capture_default_str();
  }
};

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
  os << '\n';
}

void write_csv_row(std::ostream& os, const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  write_csv_row(os, cells);
}

void write_json(std::ostream& os, const ordered_json& j) { os << j.dump(2) << '\n'; }

bool use_color(const std::ostream& os) {
  if (&os != &std::cout) return false;
  const char* no_color = std::getenv("NO_COLOR");
  if (no_color != nullptr && no_color[0] != '\0') return false;
  return isatty(STDOUT_FILENO) != 0;
}

void write_geometry_text(std::ostream& os, const ordered_json& j) {
  const bool color = use_color(os);
  const auto key = [&](const std::string& k) { return color ? "\033[1m" + k + "\033[0m" : k; };
  for (const auto& [k, v] : j.items()) {
    if (k == "boundary_segments") continue;
    os << key(k) << ": " << format_number(v.get<double>()) << '\n';
  }
  for (const auto& s : j.at("boundary_segments")) {
    os << key("segment") << " neighbor=(" << s["neighbor"][0] << "," << s["neighbor"][1] << ")"
       << " from (" << format_number(s["horizontal_end"][0].get<double>()) << ", "
       << format_number(s["horizontal_end"][1].get<double>()) << ") to ("
       << format_number(s["vertical_end"][0].get<double>()) << ", "
       << format_number(s["vertical_end"][1].get<double>()) << ") slope=" << format_number(s["slope"].get<double>())
       << '\n';
  }
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw InvalidParams("unsupported --format '" + format + "' for this command");
}

Scheme single_round_scheme(const std::string& s) {
  if (s == "12") return Scheme::order12;
  if (s == "21") return Scheme::order21;
  throw InvalidParams("--scheme must be 12 or 21 here");
}

struct CommandFlags {
  LatticeFlags lattice;
  SizeFlags sizes;
  std::string scheme;
  std::string format;
  std::string output;
  double budget = 4.0;
  CLI::Option* budget_opt = nullptr;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
  int max_rounds = kDefaultMaxRounds;
  int max_size = 1024;
  int grid = 50;
  double x1 = 0.0;
  double x2 = 0.0;

  void add_io(CLI::App& app, const std::string& default_format, const std::string& formats) {
    format = default_format;
    app.add_option("--output", output, "Write to PATH instead of stdout");
    app.add_option("--format", format, formats)->capture_default_str();
  }
  void add_scheme(CLI::App& app, const std::string& def) {
    scheme = def;
    app.add_option("--scheme", scheme, "12, 21, inf or babai")->capture_default_str();
  }
};

class Output {
 public:
  Output(std::ostream& fallback, const std::string& path) : os_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw InvalidParams("cannot open output file '" + path + "'");
    os_ = &file_;
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void cmd_geometry(const CommandFlags& f, std::ostream& out, std::ostream& err) {
  require_format(f.format, {"json", "text"});
  const ordered_json j = geometry_to_json(cell_geometry(f.lattice.resolve(err)));
  Output o(out, f.output);
  if (f.format == "json") {
    write_json(o.stream(), j);
  } else {
    write_geometry_text(o.stream(), j);
  }
}

void cmd_analyze(const CommandFlags& f, std::ostream& out, std::ostream& err) {
  require_format(f.format, {"json"});
  const LatticeParams p = f.lattice.resolve(err);
  AnalyzeOptions opts;
  opts.scheme = sim_scheme_from_string(f.scheme);
  opts.n1 = f.sizes.n1;
  opts.n2 = f.sizes.n2;
  opts.n = f.sizes.n;
  if (f.budget_opt->count() > 0) opts.budget = f.budget;
  opts.trials = f.trials;
  opts.seed = f.seed;
  opts.max_rounds = f.max_rounds;
  const ordered_json j = analyze(p, opts);
  Output o(out, f.output);
  write_json(o.stream(), j);
}

void cmd_tradeoff(const CommandFlags& f, std::ostream& out, std::ostream& err) {
  require_format(f.format, {"csv", "json"});
  const LatticeParams p = f.lattice.resolve(err);
  const Scheme s = single_round_scheme(f.scheme);
  std::optional<double> budget;
  if (f.budget_opt->count() > 0) budget = f.budget;
  const auto rows = tradeoff_table(p, s, f.max_size, budget);
  const bool is12 = s == Scheme::order12;
  Output o(out, f.output);
  std::ostream& os = o.stream();
  if (f.format == "csv") {
    std::vector<std::string> header;
    if (is12) {
      header = {"n1", "n2"};
    } else {
      header = {"n"};
    }
    for (const char* c : {"rate_bits", "pe", "scaled_pe", "scaled_over_constant", "at_budget"}) {
      header.emplace_back(c);
    }
    write_csv_row(os, header);
    for (const auto& r : rows) {
      std::vector<double> v;
      if (is12) v.push_back(r.point.n1);
      v.insert(v.end(), {static_cast<double>(r.point.n2), r.point.rate_bits, r.point.pe, r.scaled_pe,
                         r.scaled_ratio, r.at_budget ? 1.0 : 0.0});
      write_csv_row(os, v);
    }
    return;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json e;
    if (is12) {
      e["n1"] = r.point.n1;
      e["n2"] = r.point.n2;
    } else {
      e["n"] = r.point.n2;
    }
    e["rate_bits"] = r.point.rate_bits;
    e["pe"] = r.point.pe;
    e["scaled_pe"] = r.scaled_pe;
    e["scaled_over_constant"] = r.scaled_ratio;
    e["at_budget"] = r.at_budget;
    arr.push_back(std::move(e));
  }
  write_json(os, arr);
}

void cmd_simulate(const CommandFlags& f, std::ostream& out, std::ostream& err) {
  require_format(f.format, {"json"});
  SimConfig c;
  c.params = f.lattice.resolve(err);
  c.scheme = sim_scheme_from_string(f.scheme);
  c.n1 = f.sizes.n1;
  c.n2 = f.sizes.n2;
  c.n = f.sizes.n;
  c.trials = f.trials;
  c.seed = f.seed;
  c.max_rounds = f.max_rounds;
  const SimReport r = simulate(c);
  Output o(out, f.output);
  write_json(o.stream(), report_to_json(c, r));
}

void cmd_trace(const CommandFlags& f, std::ostream& out, std::ostream& err) {
  require_format(f.format, {"json"});
  const CellGeometry g = cell_geometry(f.lattice.resolve(err));
  const Point2 x{f.x1, f.x2};
  Transcript t;
  switch (sim_scheme_from_string(f.scheme)) {
    case SimScheme::order12:
      t = run_single_round_12(x, g, Quantizer12(g, f.sizes.n1, f.sizes.n2));
      break;
    case SimScheme::order21:
      t = run_single_round_21(x, g, Quantizer21(g, f.sizes.n));
      break;
    case SimScheme::infinite:
      t = InfiniteRoundsProtocol(g).run(x, f.max_rounds);
      break;
    case SimScheme::babai_only:
      throw InvalidParams("trace needs a protocol scheme (12, 21 or inf)");
  }
  Output o(out, f.output);
  write_json(o.stream(), to_json(t));
}

void cmd_sweep(const CommandFlags& f, std::ostream& out) {
  require_format(f.format, {"csv", "json"});
  SweepOptions opts;
  opts.rho = f.lattice.rho;
  opts.points = f.grid;
  opts.budget = f.budget;
  opts.trials = f.trials;
  opts.seed = f.seed;
  opts.max_rounds = f.max_rounds;
  const auto rows = run_sweep(opts);
  const auto cols = sweep_columns(f.trials > 0);
  Output o(out, f.output);
  std::ostream& os = o.stream();
  if (f.format == "csv") {
    write_csv_row(os, cols);
    for (const auto& r : rows) write_csv_row(os, sweep_values(r));
    return;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    const auto v = sweep_values(r);
    ordered_json e;
    for (std::size_t i = 0; i < cols.size(); ++i) e[cols[i]] = v[i];
    arr.push_back(std::move(e));
  }
  write_json(os, arr);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interactive refinement of nearest-plane lattice decoding"};
  app.require_subcommand(1);

  CommandFlags geo, ana, trade, sim, trace, sweep;

  CLI::App* geometry_cmd = app.add_subcommand("geometry", "Thresholds, heights and boundary segments of B(0)");
  geo.lattice.add_to(*geometry_cmd);
  geo.add_io(*geometry_cmd, "json", "json or text");

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Closed-form error, rate and asymptotics for one scheme");
  ana.lattice.add_to(*analyze_cmd);
  ana.sizes.add_to(*analyze_cmd);
  ana.add_scheme(*analyze_cmd, "inf");
  ana.budget_opt = analyze_cmd->add_option("--budget", ana.budget, "Also report the error at this rate (bits)");
  analyze_cmd->add_option("--trials", ana.trials, "Monte Carlo trials checking the formulas (0 = none)");
  analyze_cmd->add_option("--seed", ana.seed)->capture_default_str();
  analyze_cmd->add_option("--max-rounds", ana.max_rounds)->capture_default_str();
  ana.add_io(*analyze_cmd, "json", "json");

  CLI::App* tradeoff_cmd = app.add_subcommand("tradeoff", "Pareto front of rate against error probability");
  trade.lattice.add_to(*tradeoff_cmd);
  trade.add_scheme(*tradeoff_cmd, "12");
  tradeoff_cmd->add_option("--max-size", trade.max_size, "Largest n2 (order 12) or n (order 21)")
      ->capture_default_str();
  trade.budget_opt = tradeoff_cmd->add_option("--budget", trade.budget, "Mark the best point within this rate");
  trade.add_io(*tradeoff_cmd, "csv", "csv or json");

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo estimate for one scheme");
  sim.lattice.add_to(*simulate_cmd);
  sim.sizes.add_to(*simulate_cmd);
  sim.add_scheme(*simulate_cmd, "inf");
  sim.trials = 100000;
  simulate_cmd->add_option("--trials", sim.trials)->capture_default_str();
  simulate_cmd->add_option("--seed", sim.seed)->capture_default_str();
  simulate_cmd->add_option("--max-rounds", sim.max_rounds)->capture_default_str();
  sim.add_io(*simulate_cmd, "json", "json");

  CLI::App* trace_cmd = app.add_subcommand("trace", "Message transcript for one point of B(0)");
  trace.lattice.add_to(*trace_cmd);
  trace.sizes.add_to(*trace_cmd);
  trace.add_scheme(*trace_cmd, "inf");
  trace_cmd->add_option("--x1", trace.x1)->required();
  trace_cmd->add_option("--x2", trace.x2)->required();
  trace_cmd->add_option("--max-rounds", trace.max_rounds)->capture_default_str();
  trace.add_io(*trace_cmd, "json", "json");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Theta sweep of all schemes at a fixed rate");
  sweep_cmd->add_option("--rho", sweep.lattice.rho)->capture_default_str();
  sweep_cmd->add_option("--grid", sweep.grid, "Number of theta points")->capture_default_str();
  sweep_cmd->add_option("--budget", sweep.budget, "Rate budget in bits")->capture_default_str();
  sweep_cmd->add_option("--trials", sweep.trials, "Monte Carlo trials per scheme and point (0 = none)");
  sweep_cmd->add_option("--seed", sweep.seed)->capture_default_str();
  sweep_cmd->add_option("--max-rounds", sweep.max_rounds)->capture_default_str();
  sweep.add_io(*sweep_cmd, "csv", "csv or json");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("nearplane");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    if (*geometry_cmd) cmd_geometry(geo, out, err);
    if (*analyze_cmd) cmd_analyze(ana, out, err);
    if (*tradeoff_cmd) cmd_tradeoff(trade, out, err);
    if (*simulate_cmd) cmd_simulate(sim, out, err);
    if (*trace_cmd) cmd_trace(trace, out, err);
    if (*sweep_cmd) cmd_sweep(sweep, out);
    out.flush();
    return kExitOk;
  } catch (const QuadratureFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace nearplane

#include "montecarlo_common.hpp"

#include <cmath>

namespace nearplane::detail {

TrialRunner::TrialRunner(const SimConfig& config)
    : config_(config), gen_(config.params), geometry_(cell_geometry(config.params)) {
  switch (config.scheme) {
    case SimScheme::order12:
      q12_.emplace(geometry_, config.n1, config.n2);
      break;
    case SimScheme::order21:
      q21_.emplace(geometry_, config.n);
      break;
    case SimScheme::infinite:
      infinite_.emplace(geometry_);
      break;
    case SimScheme::babai_only:
      break;
  }
}

TrialOutcome TrialRunner::operator()(std::uint64_t trial_index) const {
  const Point2 x = sample_point(geometry_.H, trial_index, config_.seed);
  const IntegerPair truth = exact_nearest_point(x, gen_);
  TrialOutcome o;
  if (config_.scheme == SimScheme::babai_only) {
    o.error = truth != IntegerPair{0, 0};
    return o;
  }
  Transcript t;
  if (q12_) {
    t = run_single_round_12(x, geometry_, *q12_);
  } else if (q21_) {
    t = run_single_round_21(x, geometry_, *q21_);
  } else {
    t = infinite_->run(x, config_.max_rounds);
    if (t.messages.size() > 2 || (t.messages.size() == 2 && t.messages[1].symbol != 0)) {
      o.extra_rounds = t.rounds - 1;
    }
  }
  o.error = t.decision != truth;
  o.halted = t.halted;
  o.bits = t.total_bits;
  o.rounds = t.rounds;
  for (const Message& m : t.messages) {
    (m.sender == Sender::S1 ? o.bits_s1 : o.bits_s2) += m.ideal_bits;
  }
  return o;
}

void Accumulator::add(const TrialOutcome& o) {
  ++n;
  if (o.error) {
    ++errors;
    if (o.halted) ++halted_errors;
  }
  if (!o.halted) ++unhalted;
  sum_bits += o.bits;
  sum_bits_sq += o.bits * o.bits;
  sum_s1 += o.bits_s1;
  sum_s1_sq += o.bits_s1 * o.bits_s1;
  sum_s2 += o.bits_s2;
  sum_s2_sq += o.bits_s2 * o.bits_s2;
  const auto r = static_cast<std::uint64_t>(o.rounds);
  sum_rounds += r;
  sum_rounds_sq += r * r;
  if (o.extra_rounds >= 0) {
    ++corner_entries;
    // Unhalted trials stop at max_rounds - 1 extra rounds and are counted there too.
    if (o.halted && static_cast<std::size_t>(o.extra_rounds) < extra_round_counts.size()) {
      ++extra_round_counts[static_cast<std::size_t>(o.extra_rounds)];
    }
  }
}

void Accumulator::merge(const Accumulator& other) {
  n += other.n;
  errors += other.errors;
  halted_errors += other.halted_errors;
  unhalted += other.unhalted;
  corner_entries += other.corner_entries;
  sum_bits += other.sum_bits;
  sum_bits_sq += other.sum_bits_sq;
  sum_s1 += other.sum_s1;
  sum_s1_sq += other.sum_s1_sq;
  sum_s2 += other.sum_s2;
  sum_s2_sq += other.sum_s2_sq;
  sum_rounds += other.sum_rounds;
  sum_rounds_sq += other.sum_rounds_sq;
  for (std::size_t i = 0; i < extra_round_counts.size() && i < other.extra_round_counts.size(); ++i) {
    extra_round_counts[i] += other.extra_round_counts[i];
  }
}

namespace {

Estimate sample_estimate(double sum, double sum_sq, std::uint64_t n) {
  Estimate e;
  const double dn = static_cast<double>(n);
  e.mean = sum / dn;
  if (n > 1) {
    const double var = std::max(0.0, (sum_sq - dn * e.mean * e.mean) / (dn - 1.0));
    e.std_error = std::sqrt(var / dn);
  }
  return e;
}

}  // namespace

SimReport Accumulator::finish(const SimConfig& config) const {
  SimReport r;
  r.trials = n;
  r.seed = config.seed;
  r.errors = errors;
  r.halted_errors = halted_errors;
  r.unhalted_count = unhalted;
  r.corner_entries = corner_entries;
  r.extra_round_counts = extra_round_counts;
  const double dn = static_cast<double>(n);
  r.pe.mean = static_cast<double>(errors) / dn;
  if (n > 1) r.pe.std_error = std::sqrt(r.pe.mean * (1.0 - r.pe.mean) / dn);
  r.bits = sample_estimate(sum_bits, sum_bits_sq, n);
  r.bits_s1 = sample_estimate(sum_s1, sum_s1_sq, n);
  r.bits_s2 = sample_estimate(sum_s2, sum_s2_sq, n);
  r.rounds = sample_estimate(static_cast<double>(sum_rounds), static_cast<double>(sum_rounds_sq), n);
  fill_predictions(config, r);
  return r;
}

}  // namespace nearplane::detail

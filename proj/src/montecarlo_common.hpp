#pragma once

// Per-trial kernel shared by simulate() and simulate_reference().

#include <memory>
#include <optional>

#include "nearplane/geometry.hpp"
#include "nearplane/montecarlo.hpp"
#include "nearplane/protocols.hpp"
#include "nearplane/quantizer.hpp"

namespace nearplane::detail {

/// Uniform point of (-1/2, 1/2] x (-height/2, height/2] for (seed, trial_index).
Point2 sample_point(double height, std::uint64_t trial_index, std::uint64_t seed);

struct TrialOutcome {
  bool error = false;
  bool halted = true;
  double bits = 0.0;
  double bits_s1 = 0.0;
  double bits_s2 = 0.0;
  int rounds = 0;
  int extra_rounds = -1;  // bisection rounds after entering a corner cell, -1 if none
};

class TrialRunner {
 public:
  explicit TrialRunner(const SimConfig& config);
  TrialOutcome operator()(std::uint64_t trial_index) const;

 private:
  SimConfig config_;
  Generator gen_;
  CellGeometry geometry_;
  std::optional<Quantizer12> q12_;
  std::optional<Quantizer21> q21_;
  std::optional<InfiniteRoundsProtocol> infinite_;
};

struct Accumulator {
  std::uint64_t n = 0;
  std::uint64_t errors = 0;
  std::uint64_t halted_errors = 0;
  std::uint64_t unhalted = 0;
  std::uint64_t corner_entries = 0;
  double sum_bits = 0, sum_bits_sq = 0;
  double sum_s1 = 0, sum_s1_sq = 0;
  double sum_s2 = 0, sum_s2_sq = 0;
  std::uint64_t sum_rounds = 0, sum_rounds_sq = 0;
  std::vector<std::uint64_t> extra_round_counts;

  explicit Accumulator(int max_rounds = 0) : extra_round_counts(static_cast<std::size_t>(max_rounds) + 1, 0) {}
  void add(const TrialOutcome& o);
  void merge(const Accumulator& other);
  SimReport finish(const SimConfig& config) const;
};

}  // namespace nearplane::detail

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nearplane/geometry.hpp"
#include "nearplane/protocols.hpp"

namespace nearplane {

enum class SimScheme { order12, order21, infinite, babai_only };

const char* to_string(SimScheme s);
SimScheme sim_scheme_from_string(const std::string& s);

struct SimConfig {
  LatticeParams params;
  SimScheme scheme = SimScheme::babai_only;
  int n1 = 1;  // order 12
  int n2 = 1;  // order 12
  int n = 1;   // order 21
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  int max_rounds = kDefaultMaxRounds;  // infinite only
};

/// Throws InvalidParams for bad lattice parameters, sizes or zero trials.
void validate(const SimConfig& config);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct SimReport {
  Estimate pe;            // binomial stderr
  Estimate bits;          // total ideal bits per transcript
  Estimate rounds;
  Estimate bits_s1;       // bits sent by S1 per transcript
  Estimate bits_s2;
  double predicted_pe = 0.0;
  double predicted_bits = 0.0;
  double predicted_rounds = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t errors = 0;          // decision != exact nearest point
  std::uint64_t halted_errors = 0;   // the same, restricted to halted transcripts
  std::uint64_t unhalted_count = 0;
  /// Infinite scheme: trials that entered a corner cell, and how many of
  /// them needed exactly k bisection rounds (index k, k >= 1; index 0 unused).
  std::uint64_t corner_entries = 0;
  std::vector<std::uint64_t> extra_round_counts;
};

/// Uniform point of B(0) for (seed, trial_index). x1 and x2 use disjoint
/// 64-bit halves of one Philox block.
Point2 sample_uniform_babai_cell(const LatticeParams& params, std::uint64_t trial_index,
                                 std::uint64_t seed);

/// Trials are split into fixed chunks of `kChunkTrials`; each chunk is
/// accumulated in trial order and chunks are combined in chunk order, so
/// the report does not depend on the number of OpenMP threads.
inline constexpr std::uint64_t kChunkTrials = 8192;

SimReport simulate(const SimConfig& config);

/// Single-threaded straight loop over all trials. Integer counts match
/// simulate() exactly; floating sums agree to rounding.
SimReport simulate_reference(const SimConfig& config);

/// Closed-form predictions for the configured scheme.
void fill_predictions(const SimConfig& config, SimReport& report);

}  // namespace nearplane

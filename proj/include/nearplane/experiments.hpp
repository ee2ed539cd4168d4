#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nearplane/analytics.hpp"
#include "nearplane/montecarlo.hpp"

namespace nearplane {

using nlohmann::ordered_json;

/// Offset applied to the excluded endpoints rho*cos(theta) in {0, 1/2}.
inline constexpr double kEndpointEpsilon = 1e-6;

/// Moves theta off an excluded endpoint by kEndpointEpsilon. Returns the
/// notice to print when it did, nothing otherwise.
std::optional<std::string> clamp_endpoint(LatticeParams& params);

/// `points` values of theta evenly spaced over the valid range for `rho`,
/// endpoints pulled in by kEndpointEpsilon. Throws InvalidParams when
/// points < 1.
std::vector<double> theta_grid(double rho, int points);

ordered_json geometry_to_json(const CellGeometry& g);
CellGeometry geometry_from_json(const ordered_json& j);

struct SweepOptions {
  double rho = 1.0;
  int points = 50;
  double budget = 4.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
  int max_rounds = kDefaultMaxRounds;
};

struct SweepEmpirical {
  int n1_12 = 0, n2_12 = 0, n_21 = 0;  // sizes simulated
  Estimate pe12, pe21, pe_babai, rbar_bits, nbar_rounds;
};

struct SweepRow {
  double theta_rad = 0.0;
  double rho = 1.0;
  double pe12_below = 0.0, pe12_interp = 0.0;
  double pe21_below = 0.0, pe21_interp = 0.0;
  double rbar_bits = 0.0, nbar_rounds = 0.0, pe_babai = 0.0;
  std::optional<SweepEmpirical> empirical;  // when trials > 0
};

std::vector<SweepRow> run_sweep(const SweepOptions& opts);

/// Column names, in output order.
std::vector<std::string> sweep_columns(bool empirical);
std::vector<double> sweep_values(const SweepRow& row);

struct TradeoffRow {
  TradeoffPoint point;
  double scaled_pe = 0.0;       // pe * 2^{exponent * rate}
  double scaled_ratio = 0.0;    // scaled_pe / asymptotic constant
  bool at_budget = false;       // the best point within the budget
};

std::vector<TradeoffRow> tradeoff_table(const LatticeParams& params, Scheme scheme, int max_size,
                                        std::optional<double> budget);

struct AnalyzeOptions {
  SimScheme scheme = SimScheme::infinite;
  int n1 = 1, n2 = 1, n = 1;
  std::optional<double> budget;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
  int max_rounds = kDefaultMaxRounds;
};

ordered_json analyze(const LatticeParams& params, const AnalyzeOptions& opts);

ordered_json report_to_json(const SimConfig& config, const SimReport& report);

}  // namespace nearplane

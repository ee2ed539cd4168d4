#include "nearplane/montecarlo.hpp"

#include <cmath>

#include "montecarlo_common.hpp"
#include "nearplane/analytics.hpp"
#include "nearplane/errors.hpp"
#include "nearplane/philox.hpp"

namespace nearplane {

const char* to_string(SimScheme s) {
  switch (s) {
    case SimScheme::order12:
      return "12";
    case SimScheme::order21:
      return "21";
    case SimScheme::infinite:
      return "inf";
    case SimScheme::babai_only:
      return "babai";
  }
  return "unknown";
}

SimScheme sim_scheme_from_string(const std::string& s) {
  if (s == "12") return SimScheme::order12;
  if (s == "21") return SimScheme::order21;
  if (s == "inf" || s == "infinite") return SimScheme::infinite;
  if (s == "babai" || s == "babai_only") return SimScheme::babai_only;
  throw InvalidParams("unknown scheme '" + s + "' (expected 12, 21, inf or babai)");
}

void validate(const SimConfig& config) {
  validate(config.params);
  if (config.trials < 1) throw InvalidParams("trials must be >= 1");
  if (config.scheme == SimScheme::order12 && (config.n1 < 1 || config.n2 < 1)) {
    throw InvalidParams("n1 and n2 must be >= 1");
  }
  if (config.scheme == SimScheme::order21 && config.n < 1) throw InvalidParams("n must be >= 1");
  if (config.scheme == SimScheme::infinite && config.max_rounds < 1) {
    throw InvalidParams("max_rounds must be >= 1");
  }
}

namespace detail {

Point2 sample_point(double height, std::uint64_t trial_index, std::uint64_t seed) {
  const Philox4x32 rng(seed);
  const auto block = rng(trial_index);
  const double u = Philox4x32::to_unit(block[0], block[1]);
  const double v = Philox4x32::to_unit(block[2], block[3]);
  // u in [0, 1) maps onto the half-open (-1/2, 1/2].
  return {0.5 - u, height * (0.5 - v)};
}

}  // namespace detail

Point2 sample_uniform_babai_cell(const LatticeParams& params, std::uint64_t trial_index,
                                 std::uint64_t seed) {
  validate(params);
  return detail::sample_point(params.rsin(), trial_index, seed);
}

void fill_predictions(const SimConfig& config, SimReport& report) {
  const LatticeParams& p = config.params;
  switch (config.scheme) {
    case SimScheme::order12:
      report.predicted_pe = pe_12(p, config.n1, config.n2);
      report.predicted_bits = rate_12(p, config.n1, config.n2).total();
      report.predicted_rounds = 1.0;
      break;
    case SimScheme::order21:
      report.predicted_pe = pe_21(p, config.n);
      report.predicted_bits = rate_21(p, config.n).total();
      report.predicted_rounds = 1.0;
      break;
    case SimScheme::infinite:
      report.predicted_pe = 0.0;
      report.predicted_bits = rbar_infinite(p);
      report.predicted_rounds = nbar_infinite(p);
      break;
    case SimScheme::babai_only:
      report.predicted_pe = babai_error_probability(p);
      report.predicted_bits = 0.0;
      report.predicted_rounds = 0.0;
      break;
  }
}

SimReport simulate(const SimConfig& config) {
  validate(config);
  const detail::TrialRunner runner(config);
  const std::uint64_t chunks = (config.trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<detail::Accumulator> partial(chunks, detail::Accumulator(config.max_rounds));

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunkTrials;
    const std::uint64_t end = std::min(config.trials, begin + kChunkTrials);
    detail::Accumulator& acc = partial[static_cast<std::size_t>(c)];
    for (std::uint64_t i = begin; i < end; ++i) acc.add(runner(i));
  }

  detail::Accumulator total(config.max_rounds);
  for (const auto& acc : partial) total.merge(acc);
  return total.finish(config);
}

}  // namespace nearplane

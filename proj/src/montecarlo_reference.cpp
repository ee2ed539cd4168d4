#include "montecarlo_common.hpp"
#include "nearplane/montecarlo.hpp"

namespace nearplane {

SimReport simulate_reference(const SimConfig& config) {
  validate(config);
  const detail::TrialRunner runner(config);
  detail::Accumulator acc(config.max_rounds);
  for (std::uint64_t i = 0; i < config.trials; ++i) acc.add(runner(i));
  return acc.finish(config);
}

}  // namespace nearplane

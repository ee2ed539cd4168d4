#include "nearplane/entropy.hpp"

#include <cmath>
#include <numeric>

#include "nearplane/errors.hpp"

namespace nearplane {

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidDistribution("empty distribution");
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidDistribution("negative or non-finite probability");
  }
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-10) throw InvalidDistribution("probabilities do not sum to 1");
}

double entropy_unchecked(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double entropy(const Distribution& d) { return entropy_unchecked(d.probs()); }

double ideal_codelength(double p) { return p >= 1.0 ? 0.0 : -std::log2(p); }

}  // namespace nearplane

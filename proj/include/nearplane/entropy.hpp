#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace nearplane {

/// A finite probability distribution; validated on construction
/// (non-negative entries summing to 1 within 1e-10).
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);
  Distribution(std::initializer_list<double> probs) : Distribution(std::vector<double>(probs)) {}

  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// Shannon entropy in bits, with 0*log(0) = 0.
double entropy(const Distribution& d);

/// Same, on raw probabilities that the caller already knows are valid.
/// Tiny negative round-off (> -1e-12) is treated as zero.
double entropy_unchecked(std::span<const double> probs);

/// -log2(p), clamped to 0 for p >= 1.
double ideal_codelength(double p);

}  // namespace nearplane

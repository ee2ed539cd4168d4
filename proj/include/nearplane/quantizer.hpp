#pragma once

#include <array>
#include <vector>

#include "nearplane/geometry.hpp"

namespace nearplane {

/// Probabilities of the three-way split along a line through B(0):
/// below/left of the first cut, between the cuts, above/right of the last.
using SplitProbs = std::array<double, 3>;

/// Split along the vertical line at x1 in [-1/2, 1/2], X2 uniform.
SplitProbs column_distribution(const CellGeometry& geometry, double x1);
/// Split along the horizontal line at x2 in [-H/2, H/2], X1 uniform.
SplitProbs row_distribution(const CellGeometry& geometry, double x2);

/// Consecutive half-open intervals (e_k, e_{k+1}], each divided into
/// `counts[k]` equal bins. Bins are numbered left to right.
class BinnedAxis {
 public:
  BinnedAxis(std::vector<double> interval_edges, std::vector<int> counts);

  int bin_count() const { return static_cast<int>(bin_edges_.size()) - 1; }
  double lo() const { return bin_edges_.front(); }
  double hi() const { return bin_edges_.back(); }
  double length() const { return hi() - lo(); }

  /// Bin containing v; v must lie in (lo, hi].
  int bin_of(double v) const;
  double bin_lo(int bin) const { return bin_edges_[bin]; }
  double bin_hi(int bin) const { return bin_edges_[bin + 1]; }
  double bin_width(int bin) const { return widths_[bin]; }
  double bin_mid(int bin) const;

  /// Index of the coarse interval holding `bin`.
  int interval_of_bin(int bin) const;
  const std::vector<double>& bin_edges() const { return bin_edges_; }

 private:
  std::vector<double> interval_edges_;
  std::vector<int> counts_;
  std::vector<int> first_bin_;
  std::vector<double> bin_edges_;
  std::vector<double> widths_;
};

/// Responder's plan inside one bin: the cuts placed at the boundary value
/// at the bin midpoint and the decision for each side.
struct CutPlan {
  bool has_low = false;
  bool has_high = false;
  double low_cut = 0.0;
  double high_cut = 0.0;
  std::array<IntegerPair, 3> labels{};  // symbol -1, 0, +1
  SplitProbs probs{};                   // P(symbol = -1, 0, +1 | bin)

  /// Ternary symbol for the responder's coordinate; ties go below the cut.
  int respond(double v) const {
    if (has_low && v <= low_cut) return -1;
    if (has_high && v > high_cut) return 1;
    return 0;
  }
  const IntegerPair& label(int symbol) const { return labels[symbol + 1]; }
};

/// A single-round quantizer: the first speaker's bin index on one axis,
/// the responder's ternary cut plan per bin on the other axis.
class StripQuantizer {
 public:
  const BinnedAxis& axis() const { return axis_; }
  const CutPlan& plan(int bin) const { return plans_[bin]; }
  int bin_count() const { return axis_.bin_count(); }

  /// Centered message symbol: the middle bin maps to 0 and mirror-image
  /// bins map to opposite symbols.
  int symbol_of_bin(int bin) const { return bin - (bin_count() - 1) / 2; }
  int bin_of_symbol(int symbol) const { return symbol + (bin_count() - 1) / 2; }

  /// P(bin) under the uniform source.
  double bin_probability(int bin) const { return axis_.bin_width(bin) / axis_.length(); }

  struct Parts {
    BinnedAxis axis;
    std::vector<CutPlan> plans;
  };

 protected:
  explicit StripQuantizer(Parts parts)
      : axis_(std::move(parts.axis)), plans_(std::move(parts.plans)) {}

 private:
  BinnedAxis axis_;
  std::vector<CutPlan> plans_;
};

/// Order 12: S1 bins x1 (n2 bins on I_{+-2}, n1 on I_{+-1}, one on I_0);
/// S2 cuts x2 per strip.
class Quantizer12 : public StripQuantizer {
 public:
  Quantizer12(const CellGeometry& geometry, int n1, int n2);
  int n1() const { return n1_; }
  int n2() const { return n2_; }

 private:
  int n1_;
  int n2_;
};

/// Order 21: S2 bins x2 (n bins on J_{+-1}, one on J_0); S1 cuts x1 per row.
class Quantizer21 : public StripQuantizer {
 public:
  Quantizer21(const CellGeometry& geometry, int n);
  int n() const { return n_; }

 private:
  int n_;
};

}  // namespace nearplane

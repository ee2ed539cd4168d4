#include "nearplane/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nearplane/errors.hpp"

namespace nearplane {

SplitProbs column_distribution(const CellGeometry& geometry, double x1) {
  const double half_h = geometry.half_height();
  double below = 0.0;
  double above = 0.0;
  for (const auto& s : geometry.boundary_segments) {
    if (!s.crosses_column(x1)) continue;
    const double cut = std::clamp(s.x2_at(x1), -half_h, half_h);
    if (s.upper()) {
      above = (half_h - cut) / geometry.H;
    } else {
      below = (cut + half_h) / geometry.H;
    }
  }
  return {below, std::max(0.0, 1.0 - below - above), above};
}

SplitProbs row_distribution(const CellGeometry& geometry, double x2) {
  double left = 0.0;
  double right = 0.0;
  for (const auto& s : geometry.boundary_segments) {
    if (!s.crosses_row(x2)) continue;
    const double cut = std::clamp(s.x1_at(x2), -0.5, 0.5);
    if (s.vertical_end.x1 > 0) {
      right = 0.5 - cut;
    } else {
      left = cut + 0.5;
    }
  }
  return {left, std::max(0.0, 1.0 - left - right), right};
}

BinnedAxis::BinnedAxis(std::vector<double> interval_edges, std::vector<int> counts)
    : interval_edges_(std::move(interval_edges)), counts_(std::move(counts)) {
  if (interval_edges_.size() != counts_.size() + 1) {
    throw std::invalid_argument("BinnedAxis: need one more edge than counts");
  }
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (counts_[k] < 1) throw std::invalid_argument("BinnedAxis: bin counts must be >= 1");
    if (!(interval_edges_[k + 1] > interval_edges_[k])) {
      throw std::invalid_argument("BinnedAxis: interval edges must increase");
    }
    first_bin_.push_back(static_cast<int>(widths_.size()));
    const double w = (interval_edges_[k + 1] - interval_edges_[k]) / counts_[k];
    for (int j = 0; j < counts_[k]; ++j) {
      bin_edges_.push_back(interval_edges_[k] + j * w);
      widths_.push_back(w);
    }
  }
  bin_edges_.push_back(interval_edges_.back());
}

int BinnedAxis::bin_of(double v) const {
  if (!(v > lo() && v <= hi())) throw OutOfCell("coordinate outside the binned support");
  // Coarse interval with v in (e_k, e_{k+1}].
  const auto it = std::lower_bound(interval_edges_.begin() + 1, interval_edges_.end(), v);
  const auto k = static_cast<std::size_t>(it - (interval_edges_.begin() + 1));
  const double w = widths_[first_bin_[k]];
  int j = static_cast<int>(std::ceil((v - interval_edges_[k]) / w)) - 1;
  j = std::clamp(j, 0, counts_[k] - 1);
  return first_bin_[k] + j;
}

double BinnedAxis::bin_mid(int bin) const { return 0.5 * (bin_edges_[bin] + bin_edges_[bin + 1]); }

int BinnedAxis::interval_of_bin(int bin) const {
  const auto it = std::upper_bound(first_bin_.begin(), first_bin_.end(), bin);
  return static_cast<int>(it - first_bin_.begin()) - 1;
}

namespace {

CutPlan plan_from_cuts(const CutSpec& spec, double lo, double hi) {
  CutPlan plan;
  // Labels run low-to-high with (0,0) in the middle; a lone cut belongs to
  // whichever side carries the non-zero label.
  if (spec.cuts.size() == 2) {
    plan.has_low = plan.has_high = true;
    plan.low_cut = spec.cuts[0];
    plan.high_cut = spec.cuts[1];
    plan.labels = {spec.labels[0], spec.labels[1], spec.labels[2]};
  } else if (spec.cuts.size() == 1) {
    if (spec.labels[0] != IntegerPair{0, 0}) {
      plan.has_low = true;
      plan.low_cut = spec.cuts[0];
      plan.labels[0] = spec.labels[0];
    } else {
      plan.has_high = true;
      plan.high_cut = spec.cuts[0];
      plan.labels[2] = spec.labels[1];
    }
  }
  const double extent = hi - lo;
  const double p_low = plan.has_low ? (plan.low_cut - lo) / extent : 0.0;
  const double p_high = plan.has_high ? (hi - plan.high_cut) / extent : 0.0;
  plan.probs = {p_low, std::max(0.0, 1.0 - p_low - p_high), p_high};
  return plan;
}

BinnedAxis axis_12(const CellGeometry& g, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw InvalidParams("quantizer sizes must be >= 1");
  return BinnedAxis({-0.5, g.t_m2, g.t_m1, g.t_1, g.t_2, 0.5}, {n2, n1, 1, n1, n2});
}

BinnedAxis axis_21(const CellGeometry& g, int n) {
  if (n < 1) throw InvalidParams("quantizer size must be >= 1");
  return BinnedAxis({-g.half_height(), g.tau_m1, g.tau_1, g.half_height()}, {n, 1, n});
}

StripQuantizer::Parts build_12(const CellGeometry& g, int n1, int n2) {
  BinnedAxis axis = axis_12(g, n1, n2);
  std::vector<CutPlan> plans;
  plans.reserve(axis.bin_count());
  for (int b = 0; b < axis.bin_count(); ++b) {
    plans.push_back(plan_from_cuts(strip_cuts(g, axis.bin_mid(b)), -g.half_height(), g.half_height()));
  }
  return {std::move(axis), std::move(plans)};
}

StripQuantizer::Parts build_21(const CellGeometry& g, int n) {
  BinnedAxis axis = axis_21(g, n);
  std::vector<CutPlan> plans;
  plans.reserve(axis.bin_count());
  for (int b = 0; b < axis.bin_count(); ++b) {
    plans.push_back(plan_from_cuts(row_cuts(g, axis.bin_mid(b)), -0.5, 0.5));
  }
  return {std::move(axis), std::move(plans)};
}

}  // namespace

Quantizer12::Quantizer12(const CellGeometry& geometry, int n1, int n2)
    : StripQuantizer(build_12(geometry, n1, n2)), n1_(n1), n2_(n2) {}

Quantizer21::Quantizer21(const CellGeometry& geometry, int n)
    : StripQuantizer(build_21(geometry, n)), n_(n) {}

}  // namespace nearplane

#include "mstkit/histogram.hpp"

#include <cmath>
#include <limits>

#include "mstkit/error.hpp"

namespace mstkit {

Histogram::Histogram(double lo, double hi, std::size_t nbins, bool fold_overflow)
    : lo_(lo), hi_(hi), fold_overflow_(fold_overflow) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    fail(ErrorCode::InvalidArgument, "histogram range must satisfy lo < hi");
  if (nbins == 0) fail(ErrorCode::InvalidArgument, "histogram needs at least one bin");
  bins_.assign(nbins, 0.0);
}

double Histogram::bin_lo(std::size_t i) const {
  return lo_ + (hi_ - lo_) * static_cast<double>(i) / static_cast<double>(bins_.size());
}

double Histogram::bin_hi(std::size_t i) const {
  if (i + 1 == bins_.size()) return fold_overflow_ ? std::numeric_limits<double>::infinity() : hi_;
  return bin_lo(i + 1);
}

void Histogram::fill(double value, double weight) {
  if (std::isnan(value)) fail(ErrorCode::InvalidArgument, "cannot histogram NaN");
  if (!(weight >= 0.0)) fail(ErrorCode::InvalidArgument, "histogram weights must be non-negative");
  if (value < lo_) {
    underflow_ += weight;
    return;
  }
  if (value >= hi_) {
    if (fold_overflow_)
      bins_.back() += weight;
    else
      overflow_ += weight;
    return;
  }
  const double pos = (value - lo_) / (hi_ - lo_) * static_cast<double>(bins_.size());
  auto idx = static_cast<std::size_t>(pos);
  if (idx >= bins_.size()) idx = bins_.size() - 1;
  bins_[idx] += weight;
}

void Histogram::fill(std::span<const WeightedValue> values) {
  for (const auto& v : values) fill(v.value, v.weight);
}

double Histogram::total() const noexcept {
  double t = underflow_ + overflow_;
  for (double b : bins_) t += b;
  return t;
}

void Histogram::scale(double factor) {
  for (double& b : bins_) b *= factor;
  underflow_ *= factor;
  overflow_ *= factor;
}

Histogram Histogram::from_contents(double lo, double hi, bool fold_overflow, std::vector<double> bins,
                                   double underflow, double overflow) {
  Histogram h(lo, hi, bins.size(), fold_overflow);
  h.bins_ = std::move(bins);
  h.underflow_ = underflow;
  h.overflow_ = overflow;
  return h;
}

double normalization_factor(const Histogram& h, const Histogram& reference) {
  const double ht = h.total();
  const double rt = reference.total();
  if (!(ht > 0.0) || !(rt > 0.0))
    fail(ErrorCode::Numeric, "cannot normalize histograms with zero total weight");
  return rt / ht;
}

Histogram normalize_to(const Histogram& h, const Histogram& reference) {
  return normalize_by_factor(h, normalization_factor(h, reference));
}

Histogram normalize_by_factor(const Histogram& h, double factor) {
  if (!std::isfinite(factor) || factor < 0.0)
    fail(ErrorCode::InvalidArgument, "normalization factor must be finite and non-negative");
  Histogram out = h;
  out.scale(factor);
  return out;
}

}  // namespace mstkit

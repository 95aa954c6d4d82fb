#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mstkit {

struct WeightedValue {
  double value = 0.0;
  double weight = 1.0;
};

/// Uniform-bin weighted histogram on [lo, hi).
///
/// With `fold_overflow` set, entries >= hi land in the last bin (the
/// "overflow bin" of a figure); otherwise they are kept in overflow().
/// Entries below lo always go to underflow(). NaN values are rejected.
class Histogram {
 public:
  Histogram(double lo, double hi, std::size_t nbins, bool fold_overflow = false);

  void fill(double value, double weight = 1.0);
  void fill(std::span<const WeightedValue> values);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t bin_count() const noexcept { return bins_.size(); }
  bool folds_overflow() const noexcept { return fold_overflow_; }
  double bin_width() const noexcept { return (hi_ - lo_) / static_cast<double>(bins_.size()); }
  double bin_lo(std::size_t i) const;
  double bin_hi(std::size_t i) const;

  const std::vector<double>& bins() const noexcept { return bins_; }
  double content(std::size_t i) const { return bins_.at(i); }
  double underflow() const noexcept { return underflow_; }
  double overflow() const noexcept { return overflow_; }

  /// Sum of bins plus underflow and overflow.
  double total() const noexcept;

  /// Multiplies every bin (and the under/overflow counters) by `factor`.
  void scale(double factor);

  /// Rebuilds a histogram from stored contents (used by file readers).
  static Histogram from_contents(double lo, double hi, bool fold_overflow, std::vector<double> bins,
                                 double underflow, double overflow);

 private:
  double lo_;
  double hi_;
  bool fold_overflow_;
  std::vector<double> bins_;
  double underflow_ = 0.0;
  double overflow_ = 0.0;
};

/// Scales `h` so its total equals the reference total.
Histogram normalize_to(const Histogram& h, const Histogram& reference);
/// Factor normalize_to would apply: reference.total() / h.total().
double normalization_factor(const Histogram& h, const Histogram& reference);
Histogram normalize_by_factor(const Histogram& h, double factor);

}  // namespace mstkit

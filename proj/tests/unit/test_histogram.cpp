#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "mstkit/error.hpp"
#include "mstkit/histogram.hpp"

using namespace mstkit;

TEST_CASE("overflow folds into the last bin") {
  Histogram h(0.0, 2.0, 2, true);
  for (double v : {0.5, 1.5, 99.0}) h.fill(v);
  CHECK(h.content(0) == 1.0);
  CHECK(h.content(1) == 2.0);
  CHECK(h.overflow() == 0.0);
  CHECK(std::isinf(h.bin_hi(1)));
  CHECK(h.total() == 3.0);
}

TEST_CASE("without folding, overflow and underflow are kept apart") {
  Histogram h(0.0, 2.0, 2, false);
  for (double v : {-1.0, 0.5, 2.0, 3.0}) h.fill(v);
  CHECK(h.content(0) == 1.0);
  CHECK(h.content(1) == 0.0);
  CHECK(h.overflow() == 2.0);  // hi itself is outside [lo, hi)
  CHECK(h.underflow() == 1.0);
  CHECK(h.total() == 4.0);
  CHECK(h.bin_hi(1) == 2.0);
}

TEST_CASE("-inf goes to underflow, +inf to the folded last bin") {
  Histogram h(0.0, 1.0, 4, true);
  h.fill(-std::numeric_limits<double>::infinity());
  h.fill(std::numeric_limits<double>::infinity());
  CHECK(h.underflow() == 1.0);
  CHECK(h.content(3) == 1.0);
}

TEST_CASE("empty input leaves all bins zero") {
  Histogram h(0.0, 1.0, 5);
  for (double c : h.bins()) CHECK(c == 0.0);
  CHECK(h.total() == 0.0);
}

TEST_CASE("zero weights add nothing") {
  Histogram h(0.0, 1.0, 1);
  h.fill(0.2, 0.0);
  h.fill(0.7, 1.0);
  CHECK(h.content(0) == 1.0);
}

TEST_CASE("bin edges are uniform") {
  Histogram h(-1.0, 1.0, 4);
  CHECK(h.bin_lo(0) == -1.0);
  CHECK(h.bin_lo(2) == doctest::Approx(0.0));
  CHECK(h.bin_hi(3) == 1.0);
  CHECK(h.bin_width() == doctest::Approx(0.5));
}

TEST_CASE("invalid construction and fills") {
  CHECK_THROWS_AS(Histogram(1.0, 1.0, 3), Error);
  CHECK_THROWS_AS(Histogram(0.0, 1.0, 0), Error);
  Histogram h(0.0, 1.0, 2);
  CHECK_THROWS_AS(h.fill(std::nan("")), Error);
  CHECK_THROWS_AS(h.fill(0.5, -1.0), Error);
}

TEST_CASE("normalize_to matches the reference total") {
  Histogram h(0.0, 1.0, 2), ref(0.0, 1.0, 2);
  h.fill(0.1, 20.0);
  h.fill(0.9, 30.0);
  ref.fill(0.5, 100.0);
  CHECK(normalization_factor(h, ref) == doctest::Approx(2.0));
  const Histogram n = normalize_to(h, ref);
  CHECK(n.content(0) == doctest::Approx(40.0));
  CHECK(n.content(1) == doctest::Approx(60.0));
  CHECK(n.total() == doctest::Approx(ref.total()));
}

TEST_CASE("normalize_by_factor(1) is the identity") {
  Histogram h(0.0, 3.0, 3, true);
  for (double v : {0.5, 1.5, 2.5, 7.0, -2.0}) h.fill(v, 1.5);
  const Histogram n = normalize_by_factor(h, 1.0);
  CHECK(n.bins() == h.bins());
  CHECK(n.underflow() == h.underflow());
}

TEST_CASE("a branch histogram borrows the edge-length factor") {
  // Two trees with different branch counts: scaling ln(b) by its own total
  // would hide that difference.
  Histogram lnl_a(0, 1, 1), lnl_b(0, 1, 1), lnb_a(0, 1, 1);
  lnl_a.fill(0.5, 100.0);
  lnl_b.fill(0.5, 200.0);
  lnb_a.fill(0.5, 30.0);
  const double f = normalization_factor(lnl_a, lnl_b);
  const Histogram scaled = normalize_by_factor(lnb_a, f);
  CHECK(scaled.total() == doctest::Approx(60.0));
}

TEST_CASE("normalizing an empty histogram is a numeric error") {
  Histogram h(0, 1, 1), ref(0, 1, 1);
  ref.fill(0.5);
  try {
    normalize_to(h, ref);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Numeric);
  }
  CHECK_THROWS_AS(normalize_by_factor(ref, -1.0), Error);
}

TEST_CASE("from_contents restores a histogram") {
  const Histogram h = Histogram::from_contents(0.0, 2.0, true, {1.0, 2.0}, 0.5, 0.0);
  CHECK(h.bin_count() == 2);
  CHECK(h.content(1) == 2.0);
  CHECK(h.underflow() == 0.5);
  CHECK(h.folds_overflow());
}

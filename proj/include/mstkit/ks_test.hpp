#pragma once

#include <functional>
#include <vector>

namespace mstkit {

struct KsResult {
  double statistic = 0.0;  // sup |F1 - F2|
  double p_value = 1.0;    // asymptotic Kolmogorov tail probability
};

/// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);

/// One-sample test of `samples` against a continuous CDF.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample test (unweighted).
KsResult ks_test(std::vector<double> a, std::vector<double> b);

}  // namespace mstkit

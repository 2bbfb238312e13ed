#pragma once

// Test-only reference computations, written independently of the library
// code paths they check.

#include <cmath>
#include <cstdint>
#include <vector>

namespace negocc::testing {

// Direct convolution of Geom(theta (m - l + 1)/m) for l = first..last in long
// double, every geometric truncated at tmax.
inline std::vector<double> brute_convolution(std::int64_t m, double theta, std::int64_t first,
                                             std::int64_t last, std::int64_t tmax) {
  std::vector<long double> acc(static_cast<std::size_t>(tmax + 1), 0.0L);
  acc[0] = 1.0L;
  for (std::int64_t l = first; l <= last; ++l) {
    const long double p = static_cast<long double>(theta) * (m - l + 1) / m;
    std::vector<long double> next(acc.size(), 0.0L);
    for (std::size_t a = 0; a < acc.size(); ++a) {
      long double g = p;
      for (std::size_t s = 0; a + s < acc.size(); ++s) {
        next[a + s] += acc[a] * g;
        g *= 1.0L - p;
      }
    }
    acc = next;
  }
  return {acc.begin(), acc.end()};
}

// Erlang(shape, rate) CDF. Below the mean the lower tail is summed as
// e^-y sum_{j >= shape} y^j / j! to avoid cancellation.
inline double erlang_cdf(double x, int shape, double rate) {
  const long double y = static_cast<long double>(rate) * x;
  if (y < shape) {
    long double term = std::exp(-y);
    for (int j = 1; j <= shape; ++j) term *= y / j;
    long double sum = 0.0L;
    for (int j = shape; j < shape + 400; ++j) {
      sum += term;
      term *= y / (j + 1);
    }
    return static_cast<double>(sum);
  }
  long double term = std::exp(-y);
  long double sum = 0.0L;
  for (int j = 0; j < shape; ++j) {
    sum += term;
    term *= y / (j + 1);
  }
  return static_cast<double>(1.0L - sum);
}

inline double relative_error(double actual, double expected) {
  if (expected == 0.0) return std::fabs(actual);
  return std::fabs(actual - expected) / std::fabs(expected);
}

}  // namespace negocc::testing

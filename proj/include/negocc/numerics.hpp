#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "negocc/params.hpp"

namespace negocc {

// Log-space values are plain doubles. Probability zero is -inf; no operation
// in this library returns NaN or +inf for a log-probability.
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// 113-bit significand. Used only by the small-instance oracles.
using Extended = boost::multiprecision::cpp_bin_float_quad;

// log(sum exp(terms)), shifted by the maximum term. Throws DomainError on an
// empty sequence. All -inf input gives -inf.
double log_sum_exp(std::span<const double> terms);
double log_sum_exp(double a, double b);

// log(exp(l1) - exp(l2)) for l1 >= l2. Equal arguments give -inf; l1 < l2
// throws DomainError.
double log_diff_exp(double l1, double l2);

// log(1 - exp(x)) for x <= 0, switching between log(-expm1(x)) and
// log1p(-exp(x)) at -ln 2.
double log1m_exp(double x);

// Generalised harmonic number H_m^(r) = sum_{l=1}^m l^-r, ascending order.
double harmonic_number(std::int64_t m, int r);

// h_i(m, k, theta) = (m / theta)^i (H_m^(i) - H_{m-k}^(i)); k / theta^i for
// infinite m.
double h_func(Space m, std::int64_t k, double theta, int i);

// log (m)_k = sum_{i<k} log(m - i).
double log_falling_factorial(std::int64_t m, std::int64_t k);

// Stirling number of the second kind S(r, i) for 0 <= r <= 25. Returns 0 for
// i > r.
std::uint64_t stirling2_central(int r, int i);

inline constexpr int kStirlingOracleMaxN = 1000;

// Noncentral Stirling numbers S(n, k, phi) for 0 <= n <= nmax,
// 0 <= k <= kmax, built from S(n, 0, phi) = phi^n and the telescoping rule
//   S(n+1, k, phi) = sum_{r=0}^{n-k+1} (k + phi)^r S(n-r, k-1, phi).
// Entries with k > n are zero.
class NoncentralStirlingTable {
 public:
  NoncentralStirlingTable(int nmax, int kmax, const Extended& phi);

  const Extended& operator()(int n, int k) const;
  int nmax() const { return nmax_; }
  int kmax() const { return kmax_; }

 private:
  int nmax_;
  int kmax_;
  std::vector<Extended> values_;  // column-major by k
};

// Single value from the table above. Throws DomainError when k > n and
// OracleRangeError beyond kStirlingOracleMaxN.
Extended stirling2_noncentral(int n, int k, const Extended& phi);

// log P(shape, rate * x), the regularized lower incomplete gamma function.
// Series for rate*x < shape + 1, continued fraction for the upper tail
// otherwise. x = 0 gives -inf.
double gamma_log_cdf(double x, double shape, double rate);

}  // namespace negocc

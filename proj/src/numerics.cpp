#include "negocc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "negocc/errors.hpp"

namespace negocc {

double log_sum_exp(std::span<const double> terms) {
  if (terms.empty()) throw DomainError("log_sum_exp requires a non-empty sequence");
  for (double t : terms) {
    if (std::isnan(t) || t == std::numeric_limits<double>::infinity()) {
      throw DomainError("log_sum_exp terms must be finite or -inf");
    }
  }
  // Summing in sorted order makes the result independent of input order.
  std::vector<double> sorted(terms.begin(), terms.end());
  std::sort(sorted.begin(), sorted.end());
  const double top = sorted.back();
  if (top == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double t : sorted) sum += std::exp(t - top);
  return top + std::log(sum);
}

double log_sum_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (a == kNegInf) return kNegInf;
  return a + std::log1p(std::exp(b - a));
}

double log1m_exp(double x) {
  if (std::isnan(x) || x > 0.0) throw DomainError("log1m_exp requires x <= 0");
  if (x == 0.0) return kNegInf;
  if (x > -std::numbers::ln2) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

double log_diff_exp(double l1, double l2) {
  if (std::isnan(l1) || std::isnan(l2)) throw DomainError("log_diff_exp arguments must not be NaN");
  if (l1 < l2) throw DomainError("log_diff_exp requires l1 >= l2 (negative difference)");
  if (l2 == kNegInf) return l1;
  if (l1 == l2) return kNegInf;
  return l1 + log1m_exp(l2 - l1);
}

double harmonic_number(std::int64_t m, int r) {
  if (m < 0) throw DomainError("harmonic_number requires m >= 0");
  if (r < 1) throw DomainError("harmonic_number requires r >= 1");
  double sum = 0.0;
  for (std::int64_t l = 1; l <= m; ++l) sum += std::pow(static_cast<double>(l), -r);
  return sum;
}

double h_func(Space m, std::int64_t k, double theta, int i) {
  if (i < 1) throw DomainError("h_func requires i >= 1");
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must satisfy 0 < theta <= 1");
  if (k <= 0 || (m.is_finite() && k > m.bins())) throw DomainError("k must satisfy 0 < k <= m");
  if (m.is_infinite()) return static_cast<double>(k) / std::pow(theta, i);
  // The harmonic difference H_m - H_{m-k} is summed directly over its k terms;
  // differencing two O(log m) sums loses digits when k << m.
  const auto bins = static_cast<double>(m.bins());
  double sum = 0.0;
  for (std::int64_t l = m.bins() - k + 1; l <= m.bins(); ++l) {
    sum += std::pow(bins / (theta * static_cast<double>(l)), i);
  }
  return sum;
}

double log_falling_factorial(std::int64_t m, std::int64_t k) {
  if (m < 0 || k < 0 || k > m) throw DomainError("log_falling_factorial requires 0 <= k <= m");
  double sum = 0.0;
  for (std::int64_t i = 0; i < k; ++i) sum += std::log(static_cast<double>(m - i));
  return sum;
}

std::uint64_t stirling2_central(int r, int i) {
  constexpr int kMax = 25;
  if (r < 0 || i < 0) throw DomainError("stirling2_central requires non-negative arguments");
  if (r > kMax) throw OracleRangeError("stirling2_central supports r <= 25");
  if (i > r) return 0;
  std::vector<std::uint64_t> row(static_cast<std::size_t>(r) + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (int n = 1; n <= r; ++n) {
    for (int j = n; j >= 1; --j) row[j] = static_cast<std::uint64_t>(j) * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[i];
}

NoncentralStirlingTable::NoncentralStirlingTable(int nmax, int kmax, const Extended& phi)
    : nmax_(nmax), kmax_(kmax) {
  if (nmax < 0 || kmax < 0) throw DomainError("Stirling table bounds must be non-negative");
  if (phi < 0) throw DomainError("noncentrality phi must be non-negative");
  if (nmax > kStirlingOracleMaxN) {
    throw OracleRangeError("noncentral Stirling oracle supports n <= " +
                           std::to_string(kStirlingOracleMaxN));
  }
  const auto rows = static_cast<std::size_t>(nmax) + 1;
  values_.assign(rows * (static_cast<std::size_t>(kmax) + 1), Extended(0));
  auto at = [&](int n, int k) -> Extended& { return values_[static_cast<std::size_t>(k) * rows + n]; };

  Extended power = 1;
  for (int n = 0; n <= nmax; ++n) {
    at(n, 0) = power;
    power *= phi;
  }

  std::vector<Extended> powers(rows);
  for (int k = 1; k <= kmax; ++k) {
    powers[0] = 1;
    for (std::size_t r = 1; r < rows; ++r) powers[r] = powers[r - 1] * (phi + k);
    for (int n = k; n <= nmax; ++n) {
      Extended sum = 0;
      for (int r = 0; r <= n - k; ++r) sum += powers[r] * at(n - 1 - r, k - 1);
      at(n, k) = sum;
    }
  }

  for (const auto& v : values_) {
    if (!boost::multiprecision::isfinite(v)) {
      throw OracleRangeError("noncentral Stirling number overflows extended precision");
    }
  }
}

const Extended& NoncentralStirlingTable::operator()(int n, int k) const {
  if (n < 0 || n > nmax_ || k < 0 || k > kmax_) throw DomainError("Stirling table index out of range");
  return values_[static_cast<std::size_t>(k) * (static_cast<std::size_t>(nmax_) + 1) + n];
}

Extended stirling2_noncentral(int n, int k, const Extended& phi) {
  if (n < 0 || k < 0) throw DomainError("stirling2_noncentral requires non-negative n and k");
  if (k > n) throw DomainError("stirling2_noncentral requires k <= n");
  return NoncentralStirlingTable(n, k, phi)(n, k);
}

namespace {

constexpr double kGammaTolerance = 1e-15;

int gamma_iteration_cap(double shape) {
  return 200 + static_cast<int>(10.0 * std::sqrt(shape));
}

}  // namespace

double gamma_log_cdf(double x, double shape, double rate) {
  if (std::isnan(x) || x < 0.0) throw DomainError("gamma_log_cdf requires x >= 0");
  if (!(shape > 0.0) || !std::isfinite(shape)) throw DomainError("gamma shape must be positive and finite");
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("gamma rate must be positive and finite");
  if (x == 0.0) return kNegInf;
  const double y = rate * x;
  if (std::isinf(y)) return 0.0;

  const int cap = gamma_iteration_cap(shape);
  if (y < shape + 1.0) {
    // P(a, y) = y^a e^-y / Gamma(a+1) * sum_n y^n / ((a+1)...(a+n))
    double term = 1.0;
    double sum = 1.0;
    double denom = shape;
    bool converged = false;
    for (int n = 1; n <= cap; ++n) {
      denom += 1.0;
      term *= y / denom;
      sum += term;
      if (term < sum * kGammaTolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) throw ConvergenceError("incomplete gamma series did not converge");
    return -y + shape * std::log(y) - std::lgamma(shape + 1.0) + std::log(sum);
  }

  // Upper tail Q(a, y) by modified Lentz evaluation of the continued fraction.
  constexpr double kTiny = 1e-300;
  double b = y + 1.0 - shape;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  bool converged = false;
  for (int i = 1; i <= cap; ++i) {
    const double an = -i * (i - shape);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kGammaTolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) throw ConvergenceError("incomplete gamma continued fraction did not converge");
  const double log_upper = -y + shape * std::log(y) - std::lgamma(shape) + std::log(h);
  return log1m_exp(std::min(log_upper, 0.0));
}

}  // namespace negocc

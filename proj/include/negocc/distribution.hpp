#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "negocc/params.hpp"

namespace negocc {

// Log-probabilities L(t, r) = log NegOcc(t | m, r, theta) for t = 0..tmax and
// r = 1..k, as produced by the column recursion. Immutable once built.
class LogPmfBlock {
 public:
  LogPmfBlock(std::int64_t m, double theta, std::int64_t k, std::int64_t tmax,
              std::vector<double> values);

  std::int64_t m() const { return m_; }
  double theta() const { return theta_; }
  std::int64_t k() const { return k_; }
  std::int64_t tmax() const { return tmax_; }

  // r in 1..k, t in 0..tmax.
  double operator()(std::int64_t t, std::int64_t r) const;
  std::span<const double> column(std::int64_t r) const;

 private:
  std::int64_t m_;
  double theta_;
  std::int64_t k_;
  std::int64_t tmax_;
  std::vector<double> values_;  // column-major, (tmax + 1) rows per column
};

// Steps through the columns r = 1, 2, ..., m of the recursion for fixed
// (m, theta, tmax), holding only the current column.
class ColumnRecursion {
 public:
  ColumnRecursion(std::int64_t m, double theta, std::int64_t tmax);

  std::int64_t occupancy() const { return r_; }
  std::span<const double> column() const { return current_; }
  bool can_advance() const { return r_ < m_; }
  // Moves from column r to r + 1. Throws DomainError past r = m.
  void advance();

 private:
  std::int64_t m_;
  double theta_;
  std::int64_t r_ = 1;
  std::vector<double> current_;
  std::vector<double> next_;
};

// Full block for occupancy values 1..k. Column 1 is the Geom(theta) log-pmf;
// column r+1 convolves column r with Geom(theta (m - r) / m):
//   L(t, r+1) = log(theta (m-r)/m) + logsumexp_{j=0..t}(j L_r + L(t-j, r)),
//   L_r = log(1 - theta (m-r)/m).
// The inner logsumexp is carried as a running sum, so each column costs O(tmax).
LogPmfBlock exact_log_pmf_block(std::int64_t m, double theta, std::int64_t k, std::int64_t tmax);

// Final column only, keeping two columns in memory.
std::vector<double> exact_log_pmf(std::int64_t m, double theta, std::int64_t k, std::int64_t tmax);

// log[C(k+t-1, t) theta^k (1-theta)^t]; theta = 1 is a point mass at 0.
double negbin_log_pmf(std::int64_t k, double theta, std::int64_t t);

// pmf for t = 0..tmax. Finite m uses the exact recursion, infinite m the
// negative binomial.
std::vector<double> pmf_vector(const OccupancyParams& params, std::int64_t tmax,
                               bool log_output = false);

// k = m special case. Throws DomainError for infinite m.
std::vector<double> coupon_collector_pmf_vector(Space m, double theta, std::int64_t tmax,
                                                bool log_output = false);

// P(T <= t), accumulated in log space and clamped to [0, 1].
double cdf(const OccupancyParams& params, std::int64_t t);
std::vector<double> cdf_vector(const OccupancyParams& params, std::int64_t tmax);

// min{t : cdf(t) >= p} for 0 <= p < 1.
std::int64_t quantile(const OccupancyParams& params, double p);

}  // namespace negocc

#include "negocc/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "negocc/accuracy.hpp"
#include "negocc/errors.hpp"
#include "negocc/numerics.hpp"

namespace negocc {

namespace {

void validate_block_args(std::int64_t m, double theta, std::int64_t k, std::int64_t tmax) {
  if (m <= 0) throw DomainError("m must be a positive integer");
  if (k <= 0 || k > m) throw DomainError("k must satisfy 0 < k <= m");
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must satisfy 0 < theta <= 1");
  if (tmax < 0) throw DomainError("tmax must be non-negative");
}

void geometric_log_column(double theta, std::span<double> out) {
  const double log_p = std::log(theta);
  const double log_q = std::log1p(-theta);  // -inf when theta = 1
  out[0] = log_p;
  for (std::size_t t = 1; t < out.size(); ++t) {
    out[t] = log_q == kNegInf ? kNegInf : log_p + static_cast<double>(t) * log_q;
  }
}

// next(t) = log p + logsumexp_j (j log(1-p) + prev(t-j)), with the sum over j
// folded into acc(t) = logsumexp(prev(t), log(1-p) + acc(t-1)).
void convolve_geometric(std::span<const double> prev, double p, std::span<double> next) {
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  double acc = kNegInf;
  for (std::size_t t = 0; t < prev.size(); ++t) {
    acc = log_q == kNegInf ? prev[t] : log_sum_exp(prev[t], log_q + acc);
    next[t] = std::min(0.0, log_p + acc);
  }
}

double column_probability(std::int64_t m, double theta, std::int64_t r) {
  // Success probability of the increment from occupancy r to r+1.
  return theta * static_cast<double>(m - r) / static_cast<double>(m);
}

}  // namespace

LogPmfBlock::LogPmfBlock(std::int64_t m, double theta, std::int64_t k, std::int64_t tmax,
                         std::vector<double> values)
    : m_(m), theta_(theta), k_(k), tmax_(tmax), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(tmax + 1)) {
    throw DomainError("LogPmfBlock storage does not match its shape");
  }
}

double LogPmfBlock::operator()(std::int64_t t, std::int64_t r) const {
  if (t < 0 || t > tmax_ || r < 1 || r > k_) throw DomainError("LogPmfBlock index out of range");
  return values_[static_cast<std::size_t>(r - 1) * static_cast<std::size_t>(tmax_ + 1) +
                 static_cast<std::size_t>(t)];
}

std::span<const double> LogPmfBlock::column(std::int64_t r) const {
  if (r < 1 || r > k_) throw DomainError("LogPmfBlock column out of range");
  const auto rows = static_cast<std::size_t>(tmax_ + 1);
  return {values_.data() + static_cast<std::size_t>(r - 1) * rows, rows};
}

ColumnRecursion::ColumnRecursion(std::int64_t m, double theta, std::int64_t tmax)
    : m_(m), theta_(theta) {
  validate_block_args(m, theta, 1, tmax);
  current_.resize(static_cast<std::size_t>(tmax + 1));
  next_.resize(current_.size());
  geometric_log_column(theta, current_);
}

void ColumnRecursion::advance() {
  if (!can_advance()) throw DomainError("occupancy cannot exceed m");
  convolve_geometric(current_, column_probability(m_, theta_, r_), next_);
  std::swap(current_, next_);
  ++r_;
}

LogPmfBlock exact_log_pmf_block(std::int64_t m, double theta, std::int64_t k, std::int64_t tmax) {
  validate_block_args(m, theta, k, tmax);
  const auto rows = static_cast<std::size_t>(tmax + 1);
  std::vector<double> values(rows * static_cast<std::size_t>(k));
  std::span<double> all(values);
  geometric_log_column(theta, all.subspan(0, rows));
  for (std::int64_t r = 1; r < k; ++r) {
    const auto offset = static_cast<std::size_t>(r) * rows;
    convolve_geometric(all.subspan(offset - rows, rows), column_probability(m, theta, r),
                       all.subspan(offset, rows));
  }
  return LogPmfBlock(m, theta, k, tmax, std::move(values));
}

std::vector<double> exact_log_pmf(std::int64_t m, double theta, std::int64_t k, std::int64_t tmax) {
  validate_block_args(m, theta, k, tmax);
  ColumnRecursion columns(m, theta, tmax);
  while (columns.occupancy() < k) columns.advance();
  const auto column = columns.column();
  return {column.begin(), column.end()};
}

double negbin_log_pmf(std::int64_t k, double theta, std::int64_t t) {
  if (k < 1) throw DomainError("k must be a positive integer");
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must satisfy 0 < theta <= 1");
  if (t < 0) throw DomainError("t must be non-negative");
  if (theta == 1.0) return t == 0 ? 0.0 : kNegInf;
  if (t == 0) return static_cast<double>(k) * std::log(theta);
  const auto kd = static_cast<double>(k);
  const auto td = static_cast<double>(t);
  return std::lgamma(kd + td) - std::lgamma(kd) - std::lgamma(td + 1.0) + kd * std::log(theta) +
         td * std::log1p(-theta);
}

std::vector<double> pmf_vector(const OccupancyParams& params, std::int64_t tmax, bool log_output) {
  if (tmax < 0) throw DomainError("tmax must be non-negative");
  std::vector<double> values;
  if (params.finite()) {
    values = exact_log_pmf(params.m(), params.theta(), params.k(), tmax);
  } else {
    values.resize(static_cast<std::size_t>(tmax + 1));
    for (std::int64_t t = 0; t <= tmax; ++t) {
      values[static_cast<std::size_t>(t)] = negbin_log_pmf(params.k(), params.theta(), t);
    }
  }
  if (!log_output) {
    for (double& v : values) v = std::exp(v);
  }
  return values;
}

std::vector<double> coupon_collector_pmf_vector(Space m, double theta, std::int64_t tmax,
                                                bool log_output) {
  if (!m.is_finite()) {
    throw DomainError("coupon-collector distribution requires finite m");
  }
  return pmf_vector(OccupancyParams(m, m.bins(), theta), tmax, log_output);
}

std::vector<double> cdf_vector(const OccupancyParams& params, std::int64_t tmax) {
  auto values = pmf_vector(params, tmax, true);
  double acc = kNegInf;
  for (double& v : values) {
    acc = log_sum_exp(acc, v);
    v = std::clamp(std::exp(acc), 0.0, 1.0);
  }
  return values;
}

double cdf(const OccupancyParams& params, std::int64_t t) {
  if (t < 0) throw DomainError("t must be non-negative");
  return cdf_vector(params, t).back();
}

std::int64_t quantile(const OccupancyParams& params, double p) {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("p must satisfy 0 <= p < 1");
  if (p == 0.0) return 0;
  std::int64_t tmax = std::max<std::int64_t>(truncation_point(params), 1);
  double previous_total = -1.0;
  // Doubling stops once the accumulated mass no longer moves in double
  // precision; p beyond that mass cannot be resolved.
  while (true) {
    const auto cumulative = cdf_vector(params, tmax);
    const auto hit = std::lower_bound(cumulative.begin(), cumulative.end(), p);
    if (hit != cumulative.end()) return static_cast<std::int64_t>(hit - cumulative.begin());
    if (cumulative.back() <= previous_total) {
      throw DomainError("p is too close to 1 to resolve in double precision");
    }
    previous_total = cumulative.back();
    tmax *= 2;
  }
}

}  // namespace negocc

#include "negocc/representations.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "negocc/errors.hpp"

namespace negocc {

namespace {

constexpr double kBreakdownThreshold = -1e-9;

Extended integer_power(Extended base, std::int64_t exponent) {
  Extended result = 1;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

void require_finite(const OccupancyParams& params, const char* what) {
  if (!params.finite()) throw DomainError(std::string(what) + " requires finite m");
}

double clamp_oracle_value(const Extended& raw) {
  if (!boost::multiprecision::isfinite(raw)) {
    throw OracleRangeError("oracle value is not finite");
  }
  const auto value = raw.convert_to<double>();
  if (value < kBreakdownThreshold) {
    throw OracleRangeError("weighted-geometric oracle broke down (negative mass from cancellation)");
  }
  return value < 0.0 ? 0.0 : value;
}

}  // namespace

WeightVector weights(std::int64_t m, std::int64_t k) {
  if (m <= 0) throw DomainError("m must be a positive integer");
  if (k <= 0 || k > m) throw DomainError("k must satisfy 0 < k <= m");
  WeightVector out{m, k, std::vector<Extended>(static_cast<std::size_t>(k))};
  // Anchor (m)_{k-1} / (k-1)!.
  Extended anchor = 1;
  for (std::int64_t i = 1; i < k; ++i) {
    anchor *= Extended(m - i + 1);
    anchor /= Extended(i);
  }
  out.weights[static_cast<std::size_t>(k - 1)] = anchor;
  for (std::int64_t i = k - 1; i >= 1; --i) {
    const Extended ratio = -(Extended(m - i + 1) / Extended(m - i)) * (Extended(k - i) / Extended(i));
    out.weights[static_cast<std::size_t>(i - 1)] = out.weights[static_cast<std::size_t>(i)] / ratio;
  }
  for (const auto& w : out.weights) {
    if (!boost::multiprecision::isfinite(w)) throw OracleRangeError("weights overflow extended precision");
  }
  return out;
}

double weighted_geometric_pmf(const OccupancyParams& params, std::int64_t t) {
  require_finite(params, "weighted_geometric_pmf");
  if (t < 0) throw DomainError("t must be non-negative");
  const auto w = weights(params.m(), params.k());
  const Extended theta(params.theta());
  const Extended m(params.m());
  const std::int64_t failures = t + params.k() - 1;
  Extended sum = 0;
  Extended magnitude = 0;
  for (std::int64_t i = 1; i <= params.k(); ++i) {
    const Extended q = theta * Extended(params.m() - i + 1) / m;
    const Extended term = w.weights[static_cast<std::size_t>(i - 1)] * integer_power(1 - q, failures) * q;
    sum += term;
    magnitude += abs(term);
  }
  // Rounding in the alternating sum is bounded by k eps sum|term|. Once that
  // bound reaches 1e-9 of the result the digits left are noise, whatever the sign.
  const Extended rounding = magnitude * params.k() * std::numeric_limits<Extended>::epsilon();
  if (rounding > Extended(1e-9) * abs(sum)) {
    throw OracleRangeError("weighted-geometric oracle lost precision to cancellation");
  }
  return clamp_oracle_value(sum);
}

std::vector<double> increment_convolution_pmf(std::int64_t m, double theta, std::int64_t first,
                                              std::int64_t last, std::int64_t tmax) {
  if (m <= 0) throw DomainError("m must be a positive integer");
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must satisfy 0 < theta <= 1");
  if (first < 1 || last < first || last > m) throw DomainError("increments must satisfy 1 <= first <= last <= m");
  if (tmax < 0) throw DomainError("tmax must be non-negative");
  const auto rows = static_cast<std::size_t>(tmax + 1);
  std::vector<double> current(rows, 0.0);
  current[0] = 1.0;
  std::vector<double> geom(rows);
  std::vector<double> next(rows);
  for (std::int64_t l = first; l <= last; ++l) {
    const double p = theta * static_cast<double>(m - l + 1) / static_cast<double>(m);
    double mass = p;
    for (std::size_t s = 0; s < rows; ++s) {
      geom[s] = mass;
      mass *= 1.0 - p;
    }
    for (std::size_t t = 0; t < rows; ++t) {
      double acc = 0.0;
      for (std::size_t s = 0; s <= t; ++s) acc += current[t - s] * geom[s];
      next[t] = acc;
    }
    std::swap(current, next);
  }
  return current;
}

std::vector<double> convolution_pmf(const OccupancyParams& params, std::int64_t tmax) {
  require_finite(params, "convolution_pmf");
  return increment_convolution_pmf(params.m(), params.theta(), 1, params.k(), tmax);
}

std::vector<double> stirling_pmf_vector(const OccupancyParams& params, std::int64_t tmax) {
  require_finite(params, "stirling_pmf");
  if (tmax < 0) throw DomainError("t must be non-negative");
  const std::int64_t k = params.k();
  const std::int64_t nmax = k + tmax - 1;
  if (nmax > kStirlingOracleMaxN) {
    throw OracleRangeError("Stirling oracle supports k + t - 1 <= " + std::to_string(kStirlingOracleMaxN));
  }
  const Extended theta(params.theta());
  const Extended m(params.m());
  const Extended phi = m * (1 - theta) / theta;
  const NoncentralStirlingTable table(static_cast<int>(nmax), static_cast<int>(k - 1), phi);

  // Prefactor (theta/m)^{k+t} (m)_k; its magnitude stays inside the
  // extended exponent range for every n the table accepts.
  Extended falling = 1;
  for (std::int64_t i = 0; i < k; ++i) falling *= Extended(params.m() - i);
  const Extended ratio = theta / m;
  Extended prefactor = integer_power(ratio, k) * falling;

  std::vector<double> out(static_cast<std::size_t>(tmax + 1));
  for (std::int64_t t = 0; t <= tmax; ++t) {
    const Extended value = prefactor * table(static_cast<int>(k + t - 1), static_cast<int>(k - 1));
    out[static_cast<std::size_t>(t)] = clamp_oracle_value(value);
    prefactor *= ratio;
  }
  return out;
}

double stirling_pmf(const OccupancyParams& params, std::int64_t t) {
  if (t < 0) throw DomainError("t must be non-negative");
  return stirling_pmf_vector(params, t).back();
}

OccupancyParams conditional_params(std::int64_t m, std::int64_t k, double theta, std::int64_t r) {
  if (m <= 0) throw DomainError("m must be a positive integer");
  if (r < 0) throw DomainError("r must be non-negative");
  if (k <= 0 || r + k > m) throw DomainError("conditional start must satisfy r + k <= m");
  const double adjusted = theta * static_cast<double>(m - r) / static_cast<double>(m);
  return OccupancyParams(Space(m - r), k, r == 0 ? theta : adjusted);
}

}  // namespace negocc

#pragma once

#include <cstdint>
#include <string>

namespace negocc {

// Number of bins. Either a positive integer or infinite (the negative
// binomial limit).
class Space {
 public:
  constexpr explicit Space(std::int64_t bins) : bins_(bins) {}

  static constexpr Space infinite() { return Space(); }

  constexpr bool is_finite() const { return bins_ > 0; }
  constexpr bool is_infinite() const { return bins_ == kInfinite; }

  // Throws DomainError when infinite.
  std::int64_t bins() const;

  std::string to_string() const;

  friend constexpr bool operator==(Space, Space) = default;

 private:
  static constexpr std::int64_t kInfinite = -1;
  constexpr Space() : bins_(kInfinite) {}

  std::int64_t bins_;
};

// Parameters (m, k, theta) of the negative occupancy distribution: the
// excess number of balls needed to occupy k of m bins when each ball sticks
// with probability theta.
class OccupancyParams {
 public:
  // Validates 0 < k <= m (k finite, k = m rejected for infinite m) and
  // 0 < theta <= 1. Throws DomainError naming the violated constraint.
  OccupancyParams(Space m, std::int64_t k, double theta);

  Space space() const { return m_; }
  bool finite() const { return m_.is_finite(); }
  std::int64_t m() const { return m_.bins(); }
  std::int64_t k() const { return k_; }
  double theta() const { return theta_; }

  bool is_coupon_collector() const { return finite() && k_ == m_.bins(); }

  // Point mass at zero: every increment is Geom(1). Happens exactly when
  // theta = 1 and either k = 1 or m is infinite.
  bool is_degenerate() const { return theta_ == 1.0 && (k_ == 1 || !finite()); }

  // Success probability of the l-th increment, theta (m - l + 1) / m.
  double increment_probability(std::int64_t l) const;

  std::string to_string() const;

  friend bool operator==(const OccupancyParams&, const OccupancyParams&) = default;

 private:
  Space m_;
  std::int64_t k_;
  double theta_;
};

}  // namespace negocc

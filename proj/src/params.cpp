#include "negocc/params.hpp"

#include <cmath>
#include <sstream>

#include "negocc/errors.hpp"

namespace negocc {

std::int64_t Space::bins() const {
  if (!is_finite()) throw DomainError("operation requires a finite space parameter m");
  return bins_;
}

std::string Space::to_string() const {
  return is_finite() ? std::to_string(bins_) : std::string("inf");
}

OccupancyParams::OccupancyParams(Space m, std::int64_t k, double theta)
    : m_(m), k_(k), theta_(theta) {
  if (!m.is_finite() && !m.is_infinite()) {
    throw DomainError("m must be a positive integer or inf");
  }
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw DomainError("theta must satisfy 0 < theta <= 1");
  }
  if (k <= 0 || (m.is_finite() && k > m.bins())) {
    throw DomainError("k must satisfy 0 < k <= m");
  }
}

double OccupancyParams::increment_probability(std::int64_t l) const {
  if (!finite()) return theta_;
  return theta_ * static_cast<double>(m() - l + 1) / static_cast<double>(m());
}

std::string OccupancyParams::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "(m=" << m_.to_string() << ", k=" << k_ << ", theta=" << theta_ << ")";
  return os.str();
}

}  // namespace negocc

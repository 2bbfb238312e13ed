#include "negocc/moments.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "negocc/errors.hpp"
#include "negocc/numerics.hpp"

namespace negocc {

namespace {

constexpr double kGuardBand = 1e-12;

std::string format_bound(double bound) {
  std::ostringstream os;
  os.precision(17);
  os << bound;
  return os.str();
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_pgf_domain(const OccupancyParams& params, double modulus) {
  const double bound = pgf_radius(params);
  if (std::isinf(bound)) return;
  if (!(modulus < bound * (1.0 - kGuardBand))) {
    throw DomainError("generating function argument outside domain of convergence: |z| < " +
                      format_bound(bound));
  }
}

void check_mgf_domain(const OccupancyParams& params, double s) {
  const double bound = pgf_radius(params);
  if (std::isinf(bound)) return;
  const double log_bound = std::log(bound);
  if (!(s < log_bound - kGuardBand * std::max(1.0, std::fabs(log_bound)))) {
    throw DomainError("generating function argument outside domain of convergence: s < " +
                      format_bound(log_bound));
  }
}

}  // namespace

double cumulant(const OccupancyParams& params, int r) {
  if (r < 1 || r > kMaxCumulantOrder) throw DomainError("cumulant order must satisfy 1 <= r <= 20");
  double sum = 0.0;
  for (int i = 1; i <= r; ++i) {
    const double sign = ((r - i) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * static_cast<double>(stirling2_central(r, i)) * factorial(i - 1) *
           h_func(params.space(), params.k(), params.theta(), i);
  }
  if (r == 1) sum -= static_cast<double>(params.k());
  if (params.is_degenerate()) return 0.0;
  return sum;
}

CumulantSet cumulants(const OccupancyParams& params, int order) {
  CumulantSet out{params, {}};
  out.kappas.reserve(static_cast<std::size_t>(order));
  for (int r = 1; r <= order; ++r) out.kappas.push_back(cumulant(params, r));
  return out;
}

MomentSummary moment_summary(const OccupancyParams& params) {
  if (params.is_degenerate()) {
    throw DegenerateMomentsError(
        "skewness and kurtosis are undefined for a point mass (theta = 1 with k = 1 or infinite m)");
  }
  const auto set = cumulants(params, 4);
  const double variance = set.kappas[1];
  return MomentSummary{set.kappas[0], variance, set.kappas[2] / std::pow(variance, 1.5),
                       3.0 + set.kappas[3] / (variance * variance)};
}

std::pair<double, double> total_hitting_moments(const OccupancyParams& params) {
  const double h1 = h_func(params.space(), params.k(), params.theta(), 1);
  const double h2 = h_func(params.space(), params.k(), params.theta(), 2);
  if (params.is_degenerate()) return {h1, 0.0};
  return {h1, h2 - h1};
}

std::pair<double, double> classical_coupon_moments(std::int64_t m) {
  if (m <= 0) throw DomainError("m must be a positive integer");
  const auto md = static_cast<double>(m);
  const double h1 = harmonic_number(m, 1);
  const double h2 = harmonic_number(m, 2);
  return {md * h1, md * md * h2 - md * h1};
}

double pgf_radius(const OccupancyParams& params) {
  const double theta = params.theta();
  if (!params.finite()) {
    return theta == 1.0 ? std::numeric_limits<double>::infinity() : 1.0 / (1.0 - theta);
  }
  const auto m = static_cast<double>(params.m());
  const double denom = m - static_cast<double>(params.m() - params.k() + 1) * theta;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return m / denom;
}

double pgf(const OccupancyParams& params, double z) {
  if (!std::isfinite(z)) throw DomainError("generating function argument must be finite");
  check_pgf_domain(params, std::fabs(z));
  const double theta = params.theta();
  if (!params.finite()) {
    return std::pow(theta / (1.0 - (1.0 - theta) * z), static_cast<double>(params.k()));
  }
  const auto m = static_cast<double>(params.m());
  double product = 1.0;
  for (std::int64_t j = params.m() - params.k() + 1; j <= params.m(); ++j) {
    const double tj = theta * static_cast<double>(j);
    product *= tj / (m - (m - tj) * z);
  }
  return product;
}

double cgf(const OccupancyParams& params, double s) {
  if (!std::isfinite(s)) throw DomainError("generating function argument must be finite");
  check_mgf_domain(params, s);
  const double theta = params.theta();
  if (!params.finite()) {
    // k log(theta / (1 - (1-theta) e^s))
    return static_cast<double>(params.k()) * (std::log(theta) - std::log1p(-(1.0 - theta) * std::exp(s)));
  }
  const auto m = static_cast<double>(params.m());
  const double es = std::exp(s);
  double sum = 0.0;
  for (std::int64_t j = params.m() - params.k() + 1; j <= params.m(); ++j) {
    const double tj = theta * static_cast<double>(j);
    // log(tj / (m - (m - tj) e^s)) = -log(e^s - (m/tj)(e^s - 1))
    sum -= std::log(es - (m / tj) * std::expm1(s));
  }
  return sum;
}

double mgf(const OccupancyParams& params, double s) { return std::exp(cgf(params, s)); }

std::complex<double> characteristic_function(const OccupancyParams& params, double s) {
  if (!std::isfinite(s)) throw DomainError("generating function argument must be finite");
  // |e^{is}| = 1 lies strictly inside the PGF radius, so every real s is valid.
  const std::complex<double> z = std::polar(1.0, s);
  const double theta = params.theta();
  if (!params.finite()) {
    return std::pow(theta / (1.0 - (1.0 - theta) * z), static_cast<double>(params.k()));
  }
  const auto m = static_cast<double>(params.m());
  std::complex<double> product = 1.0;
  for (std::int64_t j = params.m() - params.k() + 1; j <= params.m(); ++j) {
    const double tj = theta * static_cast<double>(j);
    product *= tj / (m - (m - tj) * z);
  }
  return product;
}

std::complex<double> generating_function(const OccupancyParams& params, GfKind kind, double arg) {
  switch (kind) {
    case GfKind::kPgf:
      return pgf(params, arg);
    case GfKind::kCf:
      return characteristic_function(params, arg);
    case GfKind::kMgf:
      return mgf(params, arg);
    case GfKind::kCgf:
      return cgf(params, arg);
  }
  throw DomainError("unknown generating function kind");
}

double cgf_maclaurin(const OccupancyParams& params, double s, int n_terms) {
  if (n_terms < 1) throw DomainError("n_terms must be positive");
  if (!std::isfinite(s)) throw DomainError("generating function argument must be finite");
  const double u = -std::expm1(-s);  // 1 - e^{-s}
  const double radius =
      params.finite() ? static_cast<double>(params.m() - params.k() + 1) * params.theta() /
                            static_cast<double>(params.m())
                      : params.theta();
  if (!(std::fabs(u) < radius)) {
    throw DomainError("Maclaurin series requires |1 - exp(-s)| < " + format_bound(radius));
  }
  // h_n u^n = sum_l (m u / (theta l))^n, accumulated per term to avoid
  // forming (m/theta)^n.
  double sum = -static_cast<double>(params.k()) * s;
  for (int n = 1; n <= n_terms; ++n) {
    double term = 0.0;
    if (params.finite()) {
      const auto m = static_cast<double>(params.m());
      for (std::int64_t l = params.m() - params.k() + 1; l <= params.m(); ++l) {
        term += std::pow(m * u / (params.theta() * static_cast<double>(l)), n);
      }
    } else {
      term = static_cast<double>(params.k()) * std::pow(u / params.theta(), n);
    }
    sum += term / n;
  }
  return sum;
}

double asymptotic_cgf(std::int64_t m, double lambda, double theta, double s) {
  if (m <= 0) throw DomainError("m must be a positive integer");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must satisfy 0 < lambda < 1");
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must satisfy 0 < theta <= 1");
  if (!std::isfinite(s)) throw DomainError("s must be finite");
  const double es = std::exp(s);
  const double a = 1.0 - theta;
  const double first = 1.0 - a * es;
  const double second = first - lambda * theta * es;
  if (second == 0.0 || first == 0.0) {
    throw SingularityError("asymptotic cumulant function has a log of zero at this s");
  }
  const double md = static_cast<double>(m);
  const double base = -(1.0 - lambda) * std::log1p(-lambda);
  if (theta == 1.0) {
    return md * (base + (second / es) * std::log(std::fabs(second)));
  }
  const double theta_es = theta * es;
  return md * (lambda * std::log(theta) + base - (first / theta_es) * std::log(std::fabs(first)) +
               (second / theta_es) * std::log(std::fabs(second)));
}

AsymptoticMoments asymptotic_moments(std::int64_t m, std::int64_t k, double theta) {
  if (m <= 0 || k <= 0) throw DomainError("m and k must be positive integers");
  if (k >= m) throw SingularityError("asymptotic moments require k < m (log(1 - k/m) is singular)");
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must satisfy 0 < theta <= 1");
  const double md = static_cast<double>(m);
  const double lambda = static_cast<double>(k) / md;
  const double log1ml = std::log1p(-lambda);
  const double one_ml = 1.0 - lambda;
  const double scale = md * lambda / theta;
  const double t2 = theta * theta;
  const double t3 = t2 * theta;
  const double l2 = lambda * lambda;

  AsymptoticMoments out{};
  out.mu_star = -static_cast<double>(k) - (md / theta) * log1ml;
  out.sigma2_star = (md / t2) * (lambda / one_ml) + (md / theta) * log1ml;
  out.kappa3_star =
      scale * ((2.0 - lambda - 3.0 * theta + 3.0 * lambda * theta) / (t2 * one_ml * one_ml) -
               log1ml / lambda);
  const double quartic = 6.0 - 6.0 * lambda + 2.0 * l2 - 12.0 * theta + 18.0 * theta * lambda -
                         6.0 * l2 * theta + 7.0 * t2 - 14.0 * lambda * t2 + 7.0 * l2 * t2;
  out.kappa4_star = scale * (quartic / (t3 * one_ml * one_ml * one_ml) + log1ml / lambda);
  return out;
}

}  // namespace negocc

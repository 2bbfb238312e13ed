#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "negocc/params.hpp"

namespace negocc {

inline constexpr int kMaxCumulantOrder = 20;

// r-th cumulant of the excess hitting time,
//   kappa_r = sum_{i=1}^r (-1)^{r-i} S(r,i) (i-1)! h_i(m,k,theta) - k [r = 1].
// Infinite m uses h_i -> k / theta^i (negative binomial cumulants).
double cumulant(const OccupancyParams& params, int r);

struct CumulantSet {
  OccupancyParams params;
  std::vector<double> kappas;  // kappas[r-1] = kappa_r
};

CumulantSet cumulants(const OccupancyParams& params, int order);

struct MomentSummary {
  double mean;
  double variance;
  double skewness;
  double kurtosis;  // 3 + kappa_4 / sigma^4
};

// Throws DegenerateMomentsError for a point mass; use cumulant() for the mean
// and variance in that case.
MomentSummary moment_summary(const OccupancyParams& params);

// Mean and variance of the total number of balls T_k + k: (h_1, h_2 - h_1).
std::pair<double, double> total_hitting_moments(const OccupancyParams& params);

// Classical coupon collector (k = m, theta = 1), total balls:
// (m H_m, m^2 H_m^(2) - m H_m).
std::pair<double, double> classical_coupon_moments(std::int64_t m);

enum class GfKind { kPgf, kCf, kMgf, kCgf };

// Radius m / (m - (m-k+1) theta) of the PGF (+inf when the denominator
// vanishes); 1 / (1 - theta) for infinite m.
double pgf_radius(const OccupancyParams& params);

// Product forms over the increment geometrics:
//   G(z) = prod_{j=m-k+1}^{m} theta j / (m - (m - theta j) z).
// Arguments at or beyond the convergence bound (1e-12 relative guard band)
// throw DomainError naming the bound. Infinite m uses the negative binomial
// closed form (theta / (1 - (1-theta) z))^k.
double pgf(const OccupancyParams& params, double z);
double mgf(const OccupancyParams& params, double s);
double cgf(const OccupancyParams& params, double s);
std::complex<double> characteristic_function(const OccupancyParams& params, double s);

// Dispatch by kind; real kinds return a zero imaginary part.
std::complex<double> generating_function(const OccupancyParams& params, GfKind kind, double arg);

// -k s + sum_{n=1}^{n_terms} (1 - e^{-s})^n / n * h_n, valid for
// |1 - e^{-s}| < (m-k+1) theta / m (theta for infinite m).
double cgf_maclaurin(const OccupancyParams& params, double s, int n_terms);

// Limit of K(s) as m, k -> inf with k/m -> lambda:
//   m [ lambda ln theta - (1-lambda) ln|1-lambda|
//       - (1 - a e^s)/(theta e^s) ln|1 - a e^s|
//       + (1 - a e^s - lambda theta e^s)/(theta e^s) ln|1 - a e^s - lambda theta e^s| ]
// with a = 1 - theta. Throws SingularityError when a log argument is zero.
double asymptotic_cgf(std::int64_t m, double lambda, double theta, double s);

struct AsymptoticMoments {
  double mu_star;
  double sigma2_star;
  double kappa3_star;
  double kappa4_star;
};

// Closed-form asymptotic cumulants at lambda = k/m. Requires k < m.
AsymptoticMoments asymptotic_moments(std::int64_t m, std::int64_t k, double theta);

}  // namespace negocc

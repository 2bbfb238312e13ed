#pragma once

#include <cstdint>
#include <vector>

#include "negocc/numerics.hpp"
#include "negocc/params.hpp"

// Independent routes to the negative occupancy pmf. They exist to cross-check
// the log-space recursion on small instances and refuse larger ones.
namespace negocc {

// Weights w_{1,k}..w_{k,k} of the weighted-geometric form. They depend on
// (m, k) only; w_{k,k} = (m)_{k-1} / (k-1)! and the signs alternate.
struct WeightVector {
  std::int64_t m;
  std::int64_t k;
  std::vector<Extended> weights;  // weights[i-1] = w_{i,k}
};

// Anchored at w_{k,k}, then downward with
//   w_{i+1,k} / w_{i,k} = -((m-i+1)/(m-i)) ((k-i)/i).
WeightVector weights(std::int64_t m, std::int64_t k);

// sum_i w_{i,k} Geom(t + k - 1 | theta (m-i+1)/m) in extended precision.
// Throws OracleRangeError when the raw value is below -1e-9 (cancellation
// breakdown); small negative values are clamped to zero.
double weighted_geometric_pmf(const OccupancyParams& params, std::int64_t t);

// Direct k-fold convolution of the increment geometrics, each truncated at
// tmax. Entries are exact up to rounding (truncation only drops mass beyond tmax).
std::vector<double> convolution_pmf(const OccupancyParams& params, std::int64_t tmax);

// Same, over increments l = first..last (1-based) of a chain with m bins.
std::vector<double> increment_convolution_pmf(std::int64_t m, double theta, std::int64_t first,
                                              std::int64_t last, std::int64_t tmax);

// (theta/m)^{k+t} (m)_k S(k+t-1, k-1, m(1-theta)/theta), evaluated with the
// telescoping Stirling table.
double stirling_pmf(const OccupancyParams& params, std::int64_t t);
std::vector<double> stirling_pmf_vector(const OccupancyParams& params, std::int64_t tmax);

// Law of the excess time between occupancies r and r+k:
// NegOcc(m - r, k, theta (m - r) / m).
OccupancyParams conditional_params(std::int64_t m, std::int64_t k, double theta, std::int64_t r);

}  // namespace negocc

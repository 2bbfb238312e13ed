#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "negocc/params.hpp"

namespace negocc {

// Moment-matched gamma law with continuity correction: the discrete T is
// approximated by floor(S), S ~ Gamma(shape, rate), matching
// mean + 1/2 = shape / rate and variance = shape / rate^2.
struct GammaApproxParams {
  double shape;
  double rate;
};

// shape = (mean + 1/2)^2 / variance, rate = (mean + 1/2) / variance.
// variance <= 0 is the point-mass branch and throws DegenerateMomentsError.
GammaApproxParams approx_params(double mean, double variance);

// log of the gamma mass on [t, t+1) for t = 0..tmax, as a difference of
// gamma log-CDFs with the upper CDF value reused as the next lower value.
// Zero variance gives [0, -inf, ...]. Entries whose CDF difference underflows
// are -inf.
std::vector<double> approx_log_pmf(const OccupancyParams& params, std::int64_t tmax);
std::vector<double> approx_log_pmf(const GammaApproxParams& gamma, std::int64_t tmax);

enum class PmfMethod { kExact, kGamma };

std::string_view to_string(PmfMethod method);

struct MethodPmf {
  std::vector<double> values;
  PmfMethod method;
};

inline constexpr std::int64_t kDefaultSwitchThreshold = 1000;

// Exact recursion when m <= switch_threshold (or m infinite), gamma
// approximation otherwise.
MethodPmf auto_method_pmf(const OccupancyParams& params, std::int64_t tmax,
                          std::int64_t switch_threshold = kDefaultSwitchThreshold,
                          bool log_output = false);

}  // namespace negocc

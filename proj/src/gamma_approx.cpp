#include "negocc/gamma_approx.hpp"

#include <cmath>

#include "negocc/distribution.hpp"
#include "negocc/errors.hpp"
#include "negocc/moments.hpp"
#include "negocc/numerics.hpp"

namespace negocc {

GammaApproxParams approx_params(double mean, double variance) {
  if (!std::isfinite(mean) || !std::isfinite(variance)) {
    throw DomainError("gamma approximation needs finite mean and variance");
  }
  if (variance <= 0.0) throw DegenerateMomentsError("gamma approximation needs variance > 0");
  const double shifted = mean + 0.5;
  if (!(shifted > 0.0)) throw DomainError("gamma approximation needs mean + 1/2 > 0");
  return GammaApproxParams{shifted * shifted / variance, shifted / variance};
}

std::vector<double> approx_log_pmf(const GammaApproxParams& gamma, std::int64_t tmax) {
  if (tmax < 0) throw DomainError("tmax must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(tmax + 1), kNegInf);
  double upper = kNegInf;  // log CDF at 0
  for (std::int64_t t = 0; t <= tmax; ++t) {
    const double lower = upper;
    upper = gamma_log_cdf(static_cast<double>(t + 1), gamma.shape, gamma.rate);
    out[static_cast<std::size_t>(t)] = upper > lower ? log_diff_exp(upper, lower) : kNegInf;
  }
  return out;
}

std::vector<double> approx_log_pmf(const OccupancyParams& params, std::int64_t tmax) {
  if (tmax < 0) throw DomainError("tmax must be non-negative");
  const double variance = cumulant(params, 2);
  if (params.is_degenerate() || variance <= 0.0) {
    std::vector<double> out(static_cast<std::size_t>(tmax + 1), kNegInf);
    out[0] = 0.0;
    return out;
  }
  return approx_log_pmf(approx_params(cumulant(params, 1), variance), tmax);
}

std::string_view to_string(PmfMethod method) {
  return method == PmfMethod::kExact ? "exact" : "gamma";
}

MethodPmf auto_method_pmf(const OccupancyParams& params, std::int64_t tmax,
                          std::int64_t switch_threshold, bool log_output) {
  if (switch_threshold <= 0) throw DomainError("switch threshold must be a positive integer");
  if (!params.finite() || params.m() <= switch_threshold) {
    return MethodPmf{pmf_vector(params, tmax, log_output), PmfMethod::kExact};
  }
  auto values = approx_log_pmf(params, tmax);
  if (!log_output) {
    for (double& v : values) v = std::exp(v);
  }
  return MethodPmf{std::move(values), PmfMethod::kGamma};
}

}  // namespace negocc

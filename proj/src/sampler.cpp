#include "negocc/sampler.hpp"

#include <cmath>
#include <thread>

#include "negocc/errors.hpp"

namespace negocc {

std::int64_t sample_geometric(double p, double u) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("geometric probability must satisfy 0 < p <= 1");
  if (!(u > 0.0 && u < 1.0)) throw DomainError("uniform variate must lie in (0, 1)");
  if (p == 1.0) return 0;
  return static_cast<std::int64_t>(std::floor(std::log1p(-u) / std::log1p(-p)));
}

namespace {

void validate(const SampleConfig& config) {
  if (config.n <= 0) throw DomainError("sample count n must be positive");
  if (config.conditional_r < 0) throw DomainError("r must be non-negative");
  if (config.params.finite() && config.conditional_r + config.params.k() > config.params.m()) {
    throw DomainError("conditional start must satisfy r + k <= m");
  }
}

void fill_range(const SampleConfig& config, std::span<const double> probabilities,
                std::int64_t first, std::span<std::int64_t> out) {
  const auto k = static_cast<std::uint64_t>(config.params.k());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto draw = static_cast<std::uint64_t>(first) + j;
    auto rng = SplitMix64::at(config.seed, draw * k);
    std::int64_t total = 0;
    for (double p : probabilities) total += sample_geometric(p, rng.uniform());
    out[j] = total;
  }
}

}  // namespace

std::vector<std::int64_t> sample_negocc(const SampleConfig& config, unsigned threads) {
  validate(config);
  const auto& params = config.params;
  std::vector<double> probabilities(static_cast<std::size_t>(params.k()));
  for (std::int64_t l = 1; l <= params.k(); ++l) {
    probabilities[static_cast<std::size_t>(l - 1)] = params.increment_probability(config.conditional_r + l);
  }

  std::vector<std::int64_t> draws(static_cast<std::size_t>(config.n));
  std::span<std::int64_t> all(draws);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::int64_t>(config.n, 256))));
  if (threads == 1) {
    fill_range(config, probabilities, 0, all);
    return draws;
  }
  const std::size_t chunk = (draws.size() + threads - 1) / threads;
  std::vector<std::jthread> workers;
  for (std::size_t begin = 0; begin < draws.size(); begin += chunk) {
    const std::size_t count = std::min(chunk, draws.size() - begin);
    workers.emplace_back([&, begin, count] {
      fill_range(config, probabilities, static_cast<std::int64_t>(begin), all.subspan(begin, count));
    });
  }
  workers.clear();  // joins
  return draws;
}

EmpiricalPmf empirical_pmf(std::span<const std::int64_t> draws, std::int64_t tmax) {
  if (draws.empty()) throw DomainError("empirical_pmf needs at least one draw");
  if (tmax < 0) throw DomainError("tmax must be non-negative");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(tmax + 1), 0);
  std::int64_t overflow = 0;
  for (auto d : draws) {
    if (d < 0) throw DomainError("draws must be non-negative");
    if (d > tmax) {
      ++overflow;
    } else {
      ++counts[static_cast<std::size_t>(d)];
    }
  }
  const auto n = static_cast<double>(draws.size());
  EmpiricalPmf out{std::vector<double>(counts.size()), static_cast<double>(overflow) / n};
  for (std::size_t t = 0; t < counts.size(); ++t) out.frequencies[t] = static_cast<double>(counts[t]) / n;
  return out;
}

}  // namespace negocc

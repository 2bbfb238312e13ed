#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "negocc/params.hpp"

namespace negocc {

// SplitMix64 (Steele, Lea & Flood). The stream is a pure function of the
// seed and a position index, so any draw can be regenerated independently.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  // Generator positioned so its next output is element `index` of the
  // stream seeded with `seed`.
  static SplitMix64 at(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(seed + index * kGamma);
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += kGamma);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Failures before the first success: floor(log(1-u) / log(1-p)); 0 for p = 1.
std::int64_t sample_geometric(double p, double u);

struct SampleConfig {
  OccupancyParams params;
  std::int64_t n;
  std::uint64_t seed;
  std::int64_t conditional_r = 0;
};

// Draw i is sum_{l=r+1}^{r+k} Geom(theta (m-l+1)/m) using uniforms
// i*k .. i*k+k-1 of the seeded stream. Draws are split across `threads`
// contiguous index ranges; output is identical for any thread count.
std::vector<std::int64_t> sample_negocc(const SampleConfig& config, unsigned threads = 1);

struct EmpiricalPmf {
  std::vector<double> frequencies;  // t = 0..tmax
  double overflow;                  // share of draws above tmax
};

EmpiricalPmf empirical_pmf(std::span<const std::int64_t> draws, std::int64_t tmax);

}  // namespace negocc

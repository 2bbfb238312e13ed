#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "negocc/params.hpp"

namespace negocc {

// ceil(mean + 5 sd), floored at 0.
std::int64_t truncation_point(const OccupancyParams& params);

// Euclidean distance between two pmf vectors. Throws DomainError on a length
// mismatch.
double rse(std::span<const double> exact, std::span<const double> approx);

struct RseReport {
  std::int64_t m;
  std::int64_t k;
  double theta;
  std::int64_t truncation;
  double rse;
};

struct RseSummary {
  std::int64_t m;
  double max_rse;
  double mean_rse;  // unweighted over k = 1..m
  double diag_rse;  // k = m
};

inline constexpr double kDefaultWorkBudget = 1e10;

struct RseBlockOptions {
  double work_budget = kDefaultWorkBudget;
  unsigned threads = 1;
};

// Work units for the block: per m, m * (max_k T(m,k) + 1) recursion steps plus
// sum_k (T(m,k) + 1) gamma CDF evaluations.
double estimate_rse_block_work(std::int64_t max_m, double theta);

// Reports for every k = 1..m of a single m, using one pass of the column
// recursion up to max_k T(m,k).
std::vector<RseReport> rse_row(std::int64_t m, double theta);

using RseRowSink = std::function<void(std::span<const RseReport>)>;

// All 0 < k <= m <= max_m, ordered by (m, k). Rows are computed concurrently
// but handed to `sink` (when given) in increasing m as soon as available.
// Throws ResourceError when the estimate exceeds options.work_budget.
std::vector<RseReport> rse_block(std::int64_t max_m, double theta, const RseBlockOptions& options = {},
                                 const RseRowSink& sink = {});

// One summary per m present. Throws DomainError unless each m has exactly
// the reports k = 1..m.
std::vector<RseSummary> rse_summaries(std::span<const RseReport> reports);

}  // namespace negocc

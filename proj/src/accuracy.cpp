#include "negocc/accuracy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "negocc/distribution.hpp"
#include "negocc/errors.hpp"
#include "negocc/gamma_approx.hpp"
#include "negocc/moments.hpp"

namespace negocc {

std::int64_t truncation_point(const OccupancyParams& params) {
  const double mean = cumulant(params, 1);
  const double variance = std::max(0.0, cumulant(params, 2));
  const double point = std::ceil(mean + 5.0 * std::sqrt(variance));
  return point > 0.0 ? static_cast<std::int64_t>(point) : 0;
}

double rse(std::span<const double> exact, std::span<const double> approx) {
  if (exact.size() != approx.size()) throw DomainError("rse requires vectors of equal length");
  double sum = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const double d = exact[i] - approx[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

namespace {

void validate_block(std::int64_t max_m, double theta) {
  if (max_m < 1) throw DomainError("block size M must be a positive integer");
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must satisfy 0 < theta <= 1");
}

std::vector<std::int64_t> row_truncations(std::int64_t m, double theta) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(m));
  for (std::int64_t k = 1; k <= m; ++k) {
    out[static_cast<std::size_t>(k - 1)] = truncation_point(OccupancyParams(Space(m), k, theta));
  }
  return out;
}

}  // namespace

double estimate_rse_block_work(std::int64_t max_m, double theta) {
  validate_block(max_m, theta);
  double work = 0.0;
  for (std::int64_t m = 1; m <= max_m; ++m) {
    const auto truncations = row_truncations(m, theta);
    const auto widest = *std::max_element(truncations.begin(), truncations.end());
    work += static_cast<double>(m) * static_cast<double>(widest + 1);
    for (auto t : truncations) work += static_cast<double>(t + 1);
  }
  return work;
}

std::vector<RseReport> rse_row(std::int64_t m, double theta) {
  validate_block(m, theta);
  const auto truncations = row_truncations(m, theta);
  const auto widest = *std::max_element(truncations.begin(), truncations.end());
  std::vector<RseReport> reports;
  reports.reserve(static_cast<std::size_t>(m));
  std::vector<double> exact;
  ColumnRecursion columns(m, theta, widest);
  for (std::int64_t k = 1; k <= m; ++k) {
    if (k > 1) columns.advance();
    const auto truncation = truncations[static_cast<std::size_t>(k - 1)];
    const auto column = columns.column().first(static_cast<std::size_t>(truncation + 1));
    exact.resize(column.size());
    std::transform(column.begin(), column.end(), exact.begin(), [](double l) { return std::exp(l); });
    auto approx = approx_log_pmf(OccupancyParams(Space(m), k, theta), truncation);
    for (double& v : approx) v = std::exp(v);
    reports.push_back(RseReport{m, k, theta, truncation, rse(exact, approx)});
  }
  return reports;
}

std::vector<RseReport> rse_block(std::int64_t max_m, double theta, const RseBlockOptions& options,
                                 const RseRowSink& sink) {
  validate_block(max_m, theta);
  const double estimate = estimate_rse_block_work(max_m, theta);
  if (estimate > options.work_budget) {
    std::ostringstream os;
    os.precision(6);
    os << "rse block needs an estimated " << estimate << " work units, above the budget of "
       << options.work_budget;
    throw ResourceError(os.str(), estimate, options.work_budget);
  }

  std::vector<RseReport> all;
  all.reserve(static_cast<std::size_t>(max_m * (max_m + 1) / 2));
  auto emit = [&](std::vector<RseReport>& row) {
    if (sink) sink(row);
    all.insert(all.end(), row.begin(), row.end());
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(max_m)));
  if (threads == 1) {
    for (std::int64_t m = 1; m <= max_m; ++m) {
      auto row = rse_row(m, theta);
      emit(row);
    }
    return all;
  }

  // Workers claim m values in increasing order; the calling thread emits
  // rows in order as they complete.
  std::vector<std::optional<std::vector<RseReport>>> rows(static_cast<std::size_t>(max_m) + 1);
  std::exception_ptr failure;
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::int64_t> next_m{1};
  std::atomic<bool> stop{false};
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        while (!stop) {
          const std::int64_t m = next_m++;
          if (m > max_m) return;
          try {
            auto row = rse_row(m, theta);
            std::lock_guard lock(mutex);
            rows[static_cast<std::size_t>(m)] = std::move(row);
          } catch (...) {
            std::lock_guard lock(mutex);
            if (!failure) failure = std::current_exception();
            stop = true;
          }
          ready.notify_all();
        }
      });
    }
    for (std::int64_t m = 1; m <= max_m; ++m) {
      std::vector<RseReport> row;
      {
        std::unique_lock lock(mutex);
        ready.wait(lock, [&] { return failure || rows[static_cast<std::size_t>(m)].has_value(); });
        if (failure) break;
        row = std::move(*rows[static_cast<std::size_t>(m)]);
        rows[static_cast<std::size_t>(m)].reset();
      }
      try {
        emit(row);
      } catch (...) {
        std::lock_guard lock(mutex);
        failure = std::current_exception();
        stop = true;
        break;
      }
    }
    stop = true;
  }
  if (failure) std::rethrow_exception(failure);
  return all;
}

std::vector<RseSummary> rse_summaries(std::span<const RseReport> reports) {
  std::map<std::int64_t, std::vector<const RseReport*>> by_m;
  for (const auto& r : reports) by_m[r.m].push_back(&r);
  std::vector<RseSummary> out;
  out.reserve(by_m.size());
  for (auto& [m, row] : by_m) {
    std::sort(row.begin(), row.end(), [](const RseReport* a, const RseReport* b) { return a->k < b->k; });
    if (static_cast<std::int64_t>(row.size()) != m) {
      throw DomainError("rse summaries need exactly the reports k = 1..m for m = " + std::to_string(m));
    }
    double max_rse = 0.0;
    double sum = 0.0;
    for (std::int64_t k = 1; k <= m; ++k) {
      const auto* r = row[static_cast<std::size_t>(k - 1)];
      if (r->k != k) {
        throw DomainError("rse summaries need exactly the reports k = 1..m for m = " + std::to_string(m));
      }
      max_rse = std::max(max_rse, r->rse);
      sum += r->rse;
    }
    out.push_back(RseSummary{m, max_rse, sum / static_cast<double>(m), row.back()->rse});
  }
  return out;
}

}  // namespace negocc

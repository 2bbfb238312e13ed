#include "negocc/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "negocc/accuracy.hpp"
#include "negocc/distribution.hpp"
#include "negocc/errors.hpp"
#include "negocc/gamma_approx.hpp"
#include "negocc/moments.hpp"
#include "negocc/sampler.hpp"

namespace negocc::cli {

namespace {

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;
using Json = nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return v;
        }
      },
      cell);
}

Json json_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? Json(v) : Json(nullptr);
        } else {
          return v;
        }
      },
      cell);
}

enum class Format { kCsv, kJson };

// Collects rows for one result and writes them as CSV (header + rows) or as
// a JSON object {"params", "method", "values"}.
class TableWriter {
 public:
  TableWriter(std::ostream& out, Format format, std::vector<std::string> columns, Json params,
              std::string method)
      : out_(out), format_(format), columns_(std::move(columns)), params_(std::move(params)),
        method_(std::move(method)) {}

  void row(const std::vector<Cell>& cells) {
    if (format_ == Format::kCsv) {
      header();
      for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_cell(cells[i]);
      out_ << '\n';
    } else {
      Json obj = Json::object();
      for (std::size_t i = 0; i < cells.size(); ++i) obj[columns_[i]] = json_cell(cells[i]);
      values_.push_back(std::move(obj));
    }
  }

  void finish() {
    if (format_ == Format::kJson) {
      Json doc = Json::object();
      doc["params"] = params_;
      doc["method"] = method_;
      doc["values"] = std::move(values_);
      out_ << doc.dump(2) << '\n';
    } else {
      header();
    }
    out_.flush();
  }

 private:
  // Deferred to the first row so a command that fails up front writes nothing.
  void header() {
    if (header_written_) return;
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
    out_ << '\n';
    header_written_ = true;
  }

  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
  Json params_;
  std::string method_;
  Json values_ = Json::array();
  bool header_written_ = false;
};

Space parse_space(const std::string& text) {
  if (text == "inf") return Space::infinite();
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw DomainError("m must be a positive integer or \"inf\", got \"" + text + "\"");
  }
  if (value <= 0) throw DomainError("m must be a positive integer or inf");
  return Space(value);
}

struct Options {
  std::string m;
  std::int64_t k = 0;
  double theta = 0.0;
  std::optional<std::int64_t> tmax;
  double p = 0.0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::int64_t r = 0;
  std::string method = "exact";
  std::int64_t threshold = kDefaultSwitchThreshold;
  std::string format = "csv";
  bool log = false;
  bool block = false;
  bool summary = false;
  std::string out;
  std::string kind = "pgf";
  double arg = 0.0;
  double budget = kDefaultWorkBudget;
  unsigned threads = 0;
};

Json params_json(const OccupancyParams& params) {
  Json j = Json::object();
  if (params.finite()) {
    j["m"] = params.m();
  } else {
    j["m"] = "inf";
  }
  j["k"] = params.k();
  j["theta"] = params.theta();
  return j;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::int64_t resolve_tmax(const Options& o, const OccupancyParams& params) {
  if (o.tmax) {
    if (*o.tmax < 0) throw DomainError("tmax must be non-negative");
    return *o.tmax;
  }
  return truncation_point(params);
}

double present(double value, bool log_output) { return log_output ? value : std::exp(value); }

void run_pmf(const Options& o, const OccupancyParams& params, Format format, std::ostream& out) {
  const auto tmax = resolve_tmax(o, params);
  if (o.block) {
    if (!params.finite()) throw DomainError("--block requires finite m");
    if (o.method != "exact") throw DomainError("--block requires --method exact");
    const auto block = exact_log_pmf_block(params.m(), params.theta(), params.k(), tmax);
    TableWriter writer(out, format, {"t", "r", "value"}, params_json(params), "exact");
    for (std::int64_t t = 0; t <= tmax; ++t) {
      for (std::int64_t r = 1; r <= params.k(); ++r) {
        writer.row({t, r, present(block(t, r), o.log)});
      }
    }
    writer.finish();
    return;
  }

  std::vector<double> values;
  PmfMethod method = PmfMethod::kExact;
  if (o.method == "exact") {
    values = pmf_vector(params, tmax, true);
  } else if (o.method == "gamma") {
    values = approx_log_pmf(params, tmax);
    method = PmfMethod::kGamma;
  } else {
    auto result = auto_method_pmf(params, tmax, o.threshold, true);
    values = std::move(result.values);
    method = result.method;
  }
  TableWriter writer(out, format, {"t", "value"}, params_json(params), std::string(to_string(method)));
  for (std::size_t t = 0; t < values.size(); ++t) {
    writer.row({static_cast<std::int64_t>(t), present(values[t], o.log)});
  }
  writer.finish();
}

void run_approx(const Options& o, const OccupancyParams& params, Format format, std::ostream& out) {
  const auto tmax = resolve_tmax(o, params);
  const auto values = approx_log_pmf(params, tmax);
  TableWriter writer(out, format, {"t", "value"}, params_json(params), "gamma");
  for (std::size_t t = 0; t < values.size(); ++t) {
    writer.row({static_cast<std::int64_t>(t), present(values[t], o.log)});
  }
  writer.finish();
}

void run_cdf(const Options& o, const OccupancyParams& params, Format format, std::ostream& out) {
  const auto values = cdf_vector(params, resolve_tmax(o, params));
  TableWriter writer(out, format, {"t", "value"}, params_json(params), "exact");
  for (std::size_t t = 0; t < values.size(); ++t) {
    writer.row({static_cast<std::int64_t>(t), o.log ? std::log(values[t]) : values[t]});
  }
  writer.finish();
}

void run_quantile(const Options& o, const OccupancyParams& params, Format format, std::ostream& out) {
  const auto q = quantile(params, o.p);
  TableWriter writer(out, format, {"p", "value"}, params_json(params), "exact");
  writer.row({o.p, q});
  writer.finish();
}

void run_sample(const Options& o, const OccupancyParams& params, Format format, std::ostream& out) {
  SampleConfig config{params, o.n, o.seed, o.r};
  const auto draws = sample_negocc(config, resolve_threads(o.threads));
  Json p = params_json(params);
  p["n"] = o.n;
  p["seed"] = o.seed;
  p["r"] = o.r;
  TableWriter writer(out, format, {"i", "value"}, std::move(p), "sample");
  for (std::size_t i = 0; i < draws.size(); ++i) {
    writer.row({static_cast<std::int64_t>(i), draws[i]});
  }
  writer.finish();
}

void run_moments(const OccupancyParams& params, Format format, std::ostream& out) {
  TableWriter writer(out, format, {"mean", "variance", "skewness", "kurtosis"}, params_json(params),
                     "closed-form");
  if (params.is_degenerate()) {
    writer.row({cumulant(params, 1), cumulant(params, 2), std::monostate{}, std::monostate{}});
  } else {
    const auto s = moment_summary(params);
    writer.row({s.mean, s.variance, s.skewness, s.kurtosis});
  }
  writer.finish();
}

void run_gfun(const Options& o, const OccupancyParams& params, Format format, std::ostream& out) {
  GfKind kind;
  if (o.kind == "pgf") {
    kind = GfKind::kPgf;
  } else if (o.kind == "cf") {
    kind = GfKind::kCf;
  } else if (o.kind == "mgf") {
    kind = GfKind::kMgf;
  } else {
    kind = GfKind::kCgf;
  }
  const auto value = generating_function(params, kind, o.arg);
  TableWriter writer(out, format, {"kind", "arg", "real", "imag"}, params_json(params), o.kind);
  writer.row({o.kind, o.arg, value.real(), value.imag()});
  writer.finish();
}

void run_rse_block(const Options& o, Format format, std::ostream& out) {
  const Space bound = parse_space(o.m);
  if (!bound.is_finite()) throw DomainError("rse-block requires a finite block size --m");
  Json p = Json::object();
  p["M"] = bound.bins();
  p["theta"] = o.theta;
  RseBlockOptions options{o.budget, resolve_threads(o.threads)};
  if (o.summary) {
    TableWriter writer(out, format, {"m", "max_rse", "mean_rse", "diag_rse"}, std::move(p), "gamma");
    rse_block(bound.bins(), o.theta, options, [&](std::span<const RseReport> row) {
      const auto s = rse_summaries(row).front();
      writer.row({s.m, s.max_rse, s.mean_rse, s.diag_rse});
      out.flush();
    });
    writer.finish();
  } else {
    TableWriter writer(out, format, {"m", "k", "truncation", "rse"}, std::move(p), "gamma");
    rse_block(bound.bins(), o.theta, options, [&](std::span<const RseReport> row) {
      for (const auto& r : row) writer.row({r.m, r.k, r.truncation, r.rse});
      out.flush();
    });
    writer.finish();
  }
}

void add_params(CLI::App* sub, Options& o) {
  sub->add_option("--m", o.m, "number of bins (integer or inf)")->required();
  sub->add_option("--k", o.k, "occupancy target")->required();
  sub->add_option("--theta", o.theta, "probability a ball occupies its bin")->required();
}

void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "output file (default: standard output)");
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Negative occupancy and coupon-collector distributions", "negocc"};
  app.require_subcommand(1, 1);
  Options o;

  auto* pmf = app.add_subcommand("pmf", "probability mass function");
  add_params(pmf, o);
  pmf->add_option("--tmax", o.tmax, "largest argument (default ceil(mean + 5 sd))");
  pmf->add_option("--method", o.method, "exact, gamma or auto")->check(CLI::IsMember({"exact", "gamma", "auto"}));
  pmf->add_option("--threshold", o.threshold, "auto switches to gamma when m > threshold");
  pmf->add_flag("--log", o.log, "emit log-probabilities");
  pmf->add_flag("--block", o.block, "emit the full (t, r) matrix for r = 1..k");
  add_output(pmf, o);

  auto* cdf_cmd = app.add_subcommand("cdf", "cumulative distribution function");
  add_params(cdf_cmd, o);
  cdf_cmd->add_option("--tmax", o.tmax, "largest argument (default ceil(mean + 5 sd))");
  cdf_cmd->add_flag("--log", o.log, "emit log-probabilities");
  add_output(cdf_cmd, o);

  auto* quant = app.add_subcommand("quantile", "smallest t with cdf(t) >= p");
  add_params(quant, o);
  quant->add_option("--p", o.p, "probability in [0, 1)")->required();
  add_output(quant, o);

  auto* sample = app.add_subcommand("sample", "random variates");
  add_params(sample, o);
  sample->add_option("--n", o.n, "number of draws")->required();
  sample->add_option("--seed", o.seed, "64-bit seed");
  sample->add_option("--r", o.r, "conditional start: occupancy already reached");
  sample->add_option("--threads", o.threads, "worker threads (0 = hardware)");
  add_output(sample, o);

  auto* mom = app.add_subcommand("moments", "mean, variance, skewness, kurtosis");
  add_params(mom, o);
  add_output(mom, o);

  auto* gfun = app.add_subcommand("gfun", "generating functions");
  add_params(gfun, o);
  gfun->add_option("--kind", o.kind, "pgf, cf, mgf or cgf")->check(CLI::IsMember({"pgf", "cf", "mgf", "cgf"}));
  gfun->add_option("--arg", o.arg, "argument z (pgf) or s (cf, mgf, cgf)")->required();
  add_output(gfun, o);

  auto* approx = app.add_subcommand("approx", "gamma approximation to the pmf");
  add_params(approx, o);
  approx->add_option("--tmax", o.tmax, "largest argument (default ceil(mean + 5 sd))");
  approx->add_flag("--log", o.log, "emit log-probabilities");
  add_output(approx, o);

  auto* block = app.add_subcommand("rse-block", "gamma approximation error over 0 < k <= m <= M");
  block->add_option("--m", o.m, "block size M")->required();
  block->add_option("--theta", o.theta, "probability parameter")->required();
  block->add_flag("--summary", o.summary, "emit per-m max/mean/diagonal summaries");
  block->add_option("--budget", o.budget, "refuse blocks above this many work units");
  block->add_option("--threads", o.threads, "worker threads (0 = hardware)");
  add_output(block, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.out.empty()) {
      file.open(o.out);
      if (!file) throw DomainError("cannot open output file " + o.out);
      sink = &file;
    }
    const Format format = o.format == "json" ? Format::kJson : Format::kCsv;

    if (block->parsed()) {
      run_rse_block(o, format, *sink);
      return kExitOk;
    }

    const OccupancyParams params(parse_space(o.m), o.k, o.theta);
    if (pmf->parsed()) {
      run_pmf(o, params, format, *sink);
    } else if (cdf_cmd->parsed()) {
      run_cdf(o, params, format, *sink);
    } else if (quant->parsed()) {
      run_quantile(o, params, format, *sink);
    } else if (sample->parsed()) {
      run_sample(o, params, format, *sink);
    } else if (mom->parsed()) {
      run_moments(params, format, *sink);
    } else if (gfun->parsed()) {
      run_gfun(o, params, format, *sink);
    } else if (approx->parsed()) {
      run_approx(o, params, format, *sink);
    }
    return kExitOk;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace negocc::cli

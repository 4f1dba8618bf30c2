#include "logsum/bench.hpp"

#include <chrono>
#include <cmath>
#include <vector>

#include "logsum/errors.hpp"
#include "logsum/pipeline.hpp"
#include "logsum/template_store.hpp"

namespace logsum {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void summarize_runs(std::span<const double> rates, double* mean, double* std_dev) {
  double sum = 0.0;
  for (double r : rates) sum += r;
  *mean = sum / static_cast<double>(rates.size());
  if (rates.size() < 2) {
    *std_dev = 0.0;
    return;
  }
  double sq = 0.0;
  for (double r : rates) sq += (r - *mean) * (r - *mean);
  *std_dev = std::sqrt(sq / static_cast<double>(rates.size() - 1));
}

}  // namespace

BenchReport benchmark_throughput(std::span<const std::string> logs, int runs,
                                 double merge_threshold) {
  if (logs.size() < 1000) {
    throw ConfigError("benchmark needs at least 1000 logs, got " +
                      std::to_string(logs.size()));
  }
  if (runs < 3) {
    throw ConfigError("benchmark needs at least 3 runs, got " + std::to_string(runs));
  }

  BenchReport report;
  report.runs = runs;
  report.log_count = logs.size();

  const double n = static_cast<double>(logs.size());
  std::vector<double> cold_rates;
  std::vector<double> cached_rates;
  cold_rates.reserve(static_cast<std::size_t>(runs));
  cached_rates.reserve(static_cast<std::size_t>(runs));

  std::vector<Triple> sink;
  for (int run = 0; run < runs; ++run) {
    const Clock::time_point start = Clock::now();
    for (std::size_t i = 0; i < logs.size(); ++i) {
      TemplateStore store(merge_threshold);
      TripleCache cache;
      sink = process_log(store, cache, logs[i], static_cast<std::int64_t>(i));
    }
    cold_rates.push_back(n / seconds_since(start));
  }

  // Warm store and cache once, then time pure replay.
  TemplateStore store(merge_threshold);
  TripleCache cache;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    process_log(store, cache, logs[i], static_cast<std::int64_t>(i));
  }
  ReplayScratch scratch;
  for (int run = 0; run < runs; ++run) {
    const Clock::time_point start = Clock::now();
    for (std::size_t i = 0; i < logs.size(); ++i) {
      replay_cached(store, cache, logs[i], static_cast<std::int64_t>(i), scratch, sink);
    }
    cached_rates.push_back(n / seconds_since(start));
  }

  summarize_runs(cold_rates, &report.cold_mean, &report.cold_std);
  summarize_runs(cached_rates, &report.cached_mean, &report.cached_std);
  report.speedup = report.cold_mean == 0.0 ? 0.0 : report.cached_mean / report.cold_mean;
  return report;
}

}  // namespace logsum

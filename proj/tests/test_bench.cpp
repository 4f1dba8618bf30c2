#include <doctest.h>

#include <string>
#include <vector>

#include "logsum/bench.hpp"
#include "logsum/errors.hpp"
#include "logsum/reference.hpp"
#include "support/synthetic.hpp"

TEST_CASE("benchmark input validation") {
  const std::vector<std::string> small = synthetic::corpus(10, 1);
  CHECK_THROWS_AS(logsum::benchmark_throughput(small, 3), logsum::ConfigError);

  const std::vector<std::string> enough = synthetic::corpus(1000, 1);
  CHECK_THROWS_AS(logsum::benchmark_throughput(enough, 2), logsum::ConfigError);
}

TEST_CASE("benchmark produces sane throughput numbers") {
  const std::vector<std::string> logs = synthetic::corpus(1000, 7);
  const logsum::BenchReport report = logsum::benchmark_throughput(logs, 3);

  CHECK(report.runs == 3);
  CHECK(report.log_count == 1000);
  CHECK(report.cold_mean > 0.0);
  CHECK(report.cached_mean > 0.0);
  CHECK(report.cold_std >= 0.0);
  CHECK(report.cached_std >= 0.0);
  CHECK(report.speedup == doctest::Approx(report.cached_mean / report.cold_mean));
  // The replay path bypasses learning, splitting and extraction; it must beat
  // the cold path by a wide margin even on slow machines.
  CHECK(report.speedup > 1.0);
}

TEST_CASE("reference comparison points are positive and ordered") {
  CHECK(logsum::kReferenceCachedLogsPerSec > logsum::kReferenceColdLogsPerSec);
  CHECK(logsum::kReferenceColdLogsPerSec > 0.0);
  CHECK(logsum::kReferenceMeanF1 > 0.0);
  CHECK(logsum::kReferenceMeanF1 <= 1.0);
  CHECK(logsum::kReferenceCompressionRatio > 0.0);
  CHECK(logsum::kReferenceCompressionRatio < 1.0);
}

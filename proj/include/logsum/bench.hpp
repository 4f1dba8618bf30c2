#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace logsum {

struct BenchReport {
  double cold_mean = 0.0;    // logs per second
  double cold_std = 0.0;
  double cached_mean = 0.0;  // logs per second
  double cached_std = 0.0;
  double speedup = 0.0;      // cached_mean / cold_mean
  int runs = 0;
  std::size_t log_count = 0;
};

// Times the cold and cached extraction paths over the corpus.
//
// Cold treats every log as first contact: a fresh template store and cache
// per line, so matching, learning, splitting and extraction all run. Cached
// pre-learns the whole corpus once and then replays the hit path only. Each
// run processes the full corpus; mean and sample standard deviation are over
// runs. Requires at least 1000 logs and 3 runs (ConfigError otherwise).
BenchReport benchmark_throughput(std::span<const std::string> logs, int runs,
                                 double merge_threshold = 0.6);

}  // namespace logsum

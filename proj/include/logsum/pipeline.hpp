#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "logsum/template_store.hpp"
#include "logsum/triple.hpp"

namespace logsum {

// One piece of a substituted element: either literal text or a variable slot.
struct PlanSegment {
  std::string literal;
  int var_ordinal = 0;  // 0 = literal, otherwise 1-based wildcard ordinal
};

struct ElementPlan {
  std::vector<PlanSegment> segments;
  bool has_vars = false;
};

struct TriplePlan {
  ElementPlan arg1;
  ElementPlan relation;
  ElementPlan arg2;
};

// Template-level triples plus the precompiled VARX substitution program.
struct CacheEntry {
  std::vector<Triple> triples;
  std::vector<TriplePlan> plans;
};

// template id -> extraction result. Populated once per template; an entry is
// rebuilt only when its template generalizes during learning.
class TripleCache {
 public:
  const CacheEntry* find(std::int64_t template_id) const;
  const CacheEntry& put(std::int64_t template_id, std::vector<Triple> triples);
  const CacheEntry& replace(std::int64_t template_id, std::vector<Triple> triples);
  bool contains(std::int64_t template_id) const { return entries_.contains(template_id); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::int64_t, CacheEntry> entries_;
};

struct PipelineStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t merges = 0;

  double hit_ratio() const {
    const std::uint64_t total = hits + misses;
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
  }
};

// Template-level extraction: wildcards become VAR1..VARn (numbered over the
// whole template in token order), rule triples come from the structured
// parts, free-text triples follow. template_id is stamped on every triple.
std::vector<Triple> extract_for_template(const Template& tmpl, const TemplateSplit& split);

// Convenience overload computing the split itself.
std::vector<Triple> extract_for_template(const Template& tmpl);

// Looks up the cache entry for a template, extracting and inserting on first
// use.
const CacheEntry& ensure_cached(TripleCache& cache, const Template& tmpl);

// Full per-log path: tokenize, match (learning on miss, which may generalize
// a template and rebuild its cache entry), fetch cached template triples and
// substitute the matched variable values. origin_log is stamped on results.
std::vector<Triple> process_log(TemplateStore& store, TripleCache& cache,
                                std::string_view raw_log, std::int64_t log_index,
                                PipelineStats* stats = nullptr);

// Cache-free reference path: identical output to process_log but re-extracts
// from the matched template every time. Kept for coherence tests and the
// cold side of benchmarks.
std::vector<Triple> process_log_uncached(TemplateStore& store, std::string_view raw_log,
                                         std::int64_t log_index);

// Scratch buffers reused across replay_cached calls.
struct ReplayScratch {
  std::vector<std::string_view> tokens;
  std::vector<std::string_view> values;  // wildcard values by ordinal - 1
};

// Hit-only fast path: matches against already-learned templates and replays
// the cached substitution plan into `out` without touching the store or the
// cache. Returns false on a template miss (out is left cleared).
bool replay_cached(const TemplateStore& store, const TripleCache& cache,
                   std::string_view raw_log, std::int64_t log_index,
                   ReplayScratch& scratch, std::vector<Triple>& out);

}  // namespace logsum

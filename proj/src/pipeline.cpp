#include "logsum/pipeline.hpp"

#include <cassert>

#include "logsum/errors.hpp"
#include "logsum/openie_extract.hpp"
#include "logsum/rule_extract.hpp"
#include "logsum/tokenizer.hpp"

namespace logsum {

namespace {

bool is_var_token(std::string_view tok, int* ordinal) {
  if (tok.size() < 4 || tok.substr(0, 3) != "VAR" || tok[3] == '0') return false;
  int value = 0;
  for (char c : tok.substr(3)) {
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  *ordinal = value;
  return true;
}

ElementPlan compile_element(const std::string& text) {
  ElementPlan plan;
  if (text.empty()) {
    plan.segments.push_back({"", 0});
    return plan;
  }
  std::string literal;
  std::size_t pos = 0;
  bool first = true;
  while (pos <= text.size()) {
    std::size_t space = text.find(' ', pos);
    const std::size_t end = space == std::string::npos ? text.size() : space;
    std::string_view word(text.data() + pos, end - pos);
    int ordinal = 0;
    if (is_var_token(word, &ordinal)) {
      if (!first) literal += ' ';
      if (!literal.empty()) {
        plan.segments.push_back({literal, 0});
        literal.clear();
      }
      plan.segments.push_back({"", ordinal});
      plan.has_vars = true;
    } else {
      if (!first) literal += ' ';
      literal.append(word);
    }
    first = false;
    if (space == std::string::npos) break;
    pos = space + 1;
  }
  if (!literal.empty()) plan.segments.push_back({literal, 0});
  return plan;
}

void apply_plan(const ElementPlan& plan, std::span<const std::string_view> values,
                const std::string& original, std::string& out) {
  if (!plan.has_vars) {
    out = original;
    return;
  }
  out.clear();
  for (const PlanSegment& seg : plan.segments) {
    if (seg.var_ordinal == 0) {
      out += seg.literal;
    } else {
      const std::size_t idx = static_cast<std::size_t>(seg.var_ordinal) - 1;
      if (idx < values.size()) {
        out += values[idx];
      } else {
        // No binding supplied for this ordinal; keep the placeholder.
        out += "VAR" + std::to_string(seg.var_ordinal);
      }
    }
  }
}

}  // namespace

const CacheEntry* TripleCache::find(std::int64_t template_id) const {
  auto it = entries_.find(template_id);
  return it == entries_.end() ? nullptr : &it->second;
}

const CacheEntry& TripleCache::put(std::int64_t template_id, std::vector<Triple> triples) {
  CacheEntry entry;
  entry.plans.reserve(triples.size());
  for (const Triple& t : triples) {
    entry.plans.push_back(
        {compile_element(t.arg1), compile_element(t.relation), compile_element(t.arg2)});
  }
  entry.triples = std::move(triples);
  return entries_.insert_or_assign(template_id, std::move(entry)).first->second;
}

const CacheEntry& TripleCache::replace(std::int64_t template_id,
                                       std::vector<Triple> triples) {
  return put(template_id, std::move(triples));
}

std::vector<Triple> extract_for_template(const Template& tmpl, const TemplateSplit& split) {
  // Render wildcards as VAR1..VARn before extraction so the ordinals are
  // stable across the whole template.
  std::vector<std::string> display = tmpl.tokens;
  int ordinal = 0;
  for (std::size_t i = 0; i < display.size(); ++i) {
    if (tmpl.wildcard_mask[i]) {
      display[i] = "VAR" + std::to_string(++ordinal);
    }
  }

  std::span<const std::string> view(display);
  std::vector<Triple> out;
  for (const TokenRange& range : split.structured_parts) {
    for (Triple& t : extract_rule_triples(view.subspan(range.begin, range.end - range.begin))) {
      t.template_id = tmpl.id;
      out.push_back(std::move(t));
    }
  }
  for (const TokenRange& range : split.free_text_parts) {
    for (Triple& t :
         extract_openie_triples(view.subspan(range.begin, range.end - range.begin))) {
      t.template_id = tmpl.id;
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<Triple> extract_for_template(const Template& tmpl) {
  return extract_for_template(tmpl, split_template(tmpl));
}

const CacheEntry& ensure_cached(TripleCache& cache, const Template& tmpl) {
  if (const CacheEntry* hit = cache.find(tmpl.id)) return *hit;
  return cache.put(tmpl.id, extract_for_template(tmpl));
}

namespace {

std::vector<Triple> substitute(const CacheEntry& entry,
                               std::span<const std::string_view> values,
                               std::int64_t log_index) {
  std::vector<Triple> out(entry.triples.size());
  for (std::size_t i = 0; i < entry.triples.size(); ++i) {
    const Triple& src = entry.triples[i];
    const TriplePlan& plan = entry.plans[i];
    Triple& dst = out[i];
    apply_plan(plan.arg1, values, src.arg1, dst.arg1);
    apply_plan(plan.relation, values, src.relation, dst.relation);
    apply_plan(plan.arg2, values, src.arg2, dst.arg2);
    dst.source = src.source;
    dst.template_id = src.template_id;
    dst.origin_log = log_index;
  }
  return out;
}

}  // namespace

std::vector<Triple> process_log(TemplateStore& store, TripleCache& cache,
                                std::string_view raw_log, std::int64_t log_index,
                                PipelineStats* stats) {
  const std::vector<std::string> tokens = tokenize(raw_log);
  std::optional<MatchResult> match = store.match(tokens);
  if (!match) {
    auto [tmpl, outcome] = store.learn(tokens);
    if (stats) ++stats->misses;
    if (outcome == LearnOutcome::kMerged) {
      // The template mutated; any cached extraction is stale.
      cache.replace(tmpl->id, extract_for_template(*tmpl));
      if (stats) ++stats->merges;
    } else {
      ensure_cached(cache, *tmpl);
    }
    match = store.match(tokens);
    assert(match.has_value());
  } else {
    if (stats) ++stats->hits;
    ensure_cached(cache, *store.find(match->template_id));
  }

  const CacheEntry* entry = cache.find(match->template_id);
  assert(entry != nullptr);
  std::vector<std::string_view> values(match->variables.size());
  for (const VariableBinding& v : match->variables) {
    values[static_cast<std::size_t>(v.ordinal) - 1] = v.value;
  }
  return substitute(*entry, values, log_index);
}

std::vector<Triple> process_log_uncached(TemplateStore& store, std::string_view raw_log,
                                         std::int64_t log_index) {
  const std::vector<std::string> tokens = tokenize(raw_log);
  std::optional<MatchResult> match = store.match(tokens);
  if (!match) {
    store.learn(tokens);
    match = store.match(tokens);
    assert(match.has_value());
  }
  const Template* tmpl = store.find(match->template_id);
  TripleCache scratch_cache;
  const CacheEntry& entry = scratch_cache.put(tmpl->id, extract_for_template(*tmpl));
  std::vector<std::string_view> values(match->variables.size());
  for (const VariableBinding& v : match->variables) {
    values[static_cast<std::size_t>(v.ordinal) - 1] = v.value;
  }
  return substitute(entry, values, log_index);
}

bool replay_cached(const TemplateStore& store, const TripleCache& cache,
                   std::string_view raw_log, std::int64_t log_index,
                   ReplayScratch& scratch, std::vector<Triple>& out) {
  if (tokenize_views(raw_log, scratch.tokens) == 0) {
    out.clear();
    throw EmptyLog();
  }
  const Template* tmpl = store.match_views(scratch.tokens);
  if (tmpl == nullptr) {
    out.clear();
    return false;
  }
  const CacheEntry* entry = cache.find(tmpl->id);
  if (entry == nullptr) {
    out.clear();
    return false;
  }

  scratch.values.clear();
  for (std::size_t i = 0; i < tmpl->tokens.size(); ++i) {
    if (tmpl->wildcard_mask[i]) scratch.values.push_back(scratch.tokens[i]);
  }

  // resize instead of clear + rebuild: surviving elements keep their string
  // capacity, so steady-state replay stays allocation-free.
  out.resize(entry->triples.size());
  for (std::size_t i = 0; i < entry->triples.size(); ++i) {
    const Triple& src = entry->triples[i];
    const TriplePlan& plan = entry->plans[i];
    Triple& dst = out[i];
    apply_plan(plan.arg1, scratch.values, src.arg1, dst.arg1);
    apply_plan(plan.relation, scratch.values, src.relation, dst.relation);
    apply_plan(plan.arg2, scratch.values, src.arg2, dst.arg2);
    dst.source = src.source;
    dst.template_id = src.template_id;
    dst.origin_log = log_index;
  }
  return true;
}

}  // namespace logsum

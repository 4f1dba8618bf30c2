#include "logsum/template_store.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

#include "logsum/errors.hpp"
#include "logsum/tokenizer.hpp"

namespace logsum {

TemplateStore::TemplateStore(double merge_threshold)
    : merge_threshold_(merge_threshold), root_(std::make_unique<TrieNode>()) {
  if (merge_threshold <= 0.0 || merge_threshold > 1.0) {
    throw ConfigError("merge threshold must lie in (0, 1]");
  }
}

const TemplateStore::TrieNode* TemplateStore::find_child(const TrieNode& node,
                                                         std::string_view token) {
  const auto it = std::lower_bound(
      node.children.begin(), node.children.end(), token,
      [](const TrieEdge& edge, std::string_view key) { return edge.token < key; });
  if (it == node.children.end() || it->token != token) return nullptr;
  return it->child.get();
}

TemplateStore::TrieNode& TemplateStore::ensure_child(TrieNode& node, std::string_view token) {
  auto it = std::lower_bound(
      node.children.begin(), node.children.end(), token,
      [](const TrieEdge& edge, std::string_view key) { return edge.token < key; });
  if (it == node.children.end() || it->token != token) {
    it = node.children.insert(it, TrieEdge{std::string(token), std::make_unique<TrieNode>()});
    if (token == kWildcard) node.wildcard = it->child.get();
  }
  return *it->child;
}

void TemplateStore::erase_child(TrieNode& node, std::string_view token) {
  const auto it = std::lower_bound(
      node.children.begin(), node.children.end(), token,
      [](const TrieEdge& edge, std::string_view key) { return edge.token < key; });
  assert(it != node.children.end() && it->token == token);
  if (token == kWildcard) node.wildcard = nullptr;
  node.children.erase(it);
}

void TemplateStore::trie_insert(const std::vector<std::string>& tokens, std::int64_t index) {
  TrieNode* node = root_.get();
  for (const std::string& tok : tokens) {
    node = &ensure_child(*node, tok);
  }
  assert(node->template_index < 0);
  node->template_index = index;
}

void TemplateStore::trie_remove(const std::vector<std::string>& tokens) {
  std::vector<TrieNode*> path{root_.get()};
  for (const std::string& tok : tokens) {
    const TrieNode* next = find_child(*path.back(), tok);
    assert(next != nullptr);
    path.push_back(const_cast<TrieNode*>(next));
  }
  path.back()->template_index = -1;
  for (std::size_t depth = tokens.size(); depth > 0; --depth) {
    TrieNode* node = path[depth];
    if (node->template_index >= 0 || !node->children.empty()) break;
    erase_child(*path[depth - 1], tokens[depth - 1]);
  }
}

void TemplateStore::descend(const TrieNode& node, std::span<const std::string_view> tokens,
                            std::size_t depth, const Template** best) const {
  if (depth == tokens.size()) {
    if (node.template_index < 0) return;
    const Template& cand = templates_[static_cast<std::size_t>(node.template_index)];
    if (*best == nullptr || cand.wildcard_count < (*best)->wildcard_count ||
        (cand.wildcard_count == (*best)->wildcard_count && cand.id < (*best)->id)) {
      *best = &cand;
    }
    return;
  }
  const std::string_view tok = tokens[depth];
  if (const TrieNode* exact = find_child(node, tok)) {
    descend(*exact, tokens, depth + 1, best);
  }
  if (node.wildcard != nullptr && tok != kWildcard) {
    descend(*node.wildcard, tokens, depth + 1, best);
  }
}

const Template* TemplateStore::match_views(std::span<const std::string_view> tokens) const {
  if (tokens.empty()) return nullptr;
  const Template* best = nullptr;
  descend(*root_, tokens, 0, &best);
  return best;
}

std::optional<MatchResult> TemplateStore::match(std::span<const std::string> tokens) const {
  std::vector<std::string_view> views(tokens.begin(), tokens.end());
  const Template* tmpl = match_views(views);
  if (tmpl == nullptr) return std::nullopt;
  MatchResult result;
  result.template_id = tmpl->id;
  int ordinal = 0;
  for (std::size_t i = 0; i < tmpl->tokens.size(); ++i) {
    if (!tmpl->wildcard_mask[i]) continue;
    ++ordinal;
    result.variables.push_back({ordinal, tokens[i]});
  }
  return result;
}

std::pair<const Template*, LearnOutcome> TemplateStore::learn(
    std::span<const std::string> tokens) {
  if (tokens.empty()) throw EmptyLog();
  if (auto hit = match(tokens)) {
    return {find(hit->template_id), LearnOutcome::kMatched};
  }

  // Closest equal-length template; wildcard slots count as agreement.
  std::size_t best_index = templates_.size();
  std::size_t best_agree = 0;
  for (std::size_t idx = 0; idx < templates_.size(); ++idx) {
    const Template& t = templates_[idx];
    if (t.tokens.size() != tokens.size()) continue;
    std::size_t agree = 0;
    for (std::size_t p = 0; p < tokens.size(); ++p) {
      if (t.wildcard_mask[p] || t.tokens[p] == tokens[p]) ++agree;
    }
    if (best_index == templates_.size() || agree > best_agree) {
      best_index = idx;
      best_agree = agree;
    }
  }

  if (best_index < templates_.size() &&
      static_cast<double>(best_agree) >=
          merge_threshold_ * static_cast<double>(tokens.size())) {
    Template& t = templates_[best_index];
    trie_remove(t.tokens);
    for (std::size_t p = 0; p < tokens.size(); ++p) {
      if (!t.wildcard_mask[p] && t.tokens[p] != tokens[p]) {
        t.tokens[p] = kWildcard;
        t.wildcard_mask[p] = true;
        ++t.wildcard_count;
      }
    }
    trie_insert(t.tokens, static_cast<std::int64_t>(best_index));
    return {&t, LearnOutcome::kMerged};
  }

  Template fresh;
  fresh.id = next_id_++;
  fresh.tokens.assign(tokens.begin(), tokens.end());
  fresh.wildcard_mask.resize(tokens.size());
  for (std::size_t p = 0; p < tokens.size(); ++p) {
    if (fresh.tokens[p] == kWildcard) {
      fresh.wildcard_mask[p] = true;
      ++fresh.wildcard_count;
    }
  }
  templates_.push_back(std::move(fresh));
  const std::size_t idx = templates_.size() - 1;
  index_by_id_.emplace(templates_[idx].id, idx);
  trie_insert(templates_[idx].tokens, static_cast<std::int64_t>(idx));
  return {&templates_[idx], LearnOutcome::kInserted};
}

const Template& TemplateStore::insert_template(std::int64_t id, std::vector<std::string> tokens) {
  if (tokens.empty()) throw ConfigError("template must have at least one token");
  if (index_by_id_.contains(id)) {
    throw ConfigError("duplicate template id " + std::to_string(id));
  }
  const TrieNode* probe = root_.get();
  for (const std::string& tok : tokens) {
    probe = find_child(*probe, tok);
    if (probe == nullptr) break;
  }
  if (probe != nullptr && probe->template_index >= 0) {
    throw ConfigError("duplicate template token sequence for id " + std::to_string(id));
  }
  Template t;
  t.id = id;
  t.tokens = std::move(tokens);
  t.wildcard_mask.resize(t.tokens.size());
  for (std::size_t p = 0; p < t.tokens.size(); ++p) {
    if (t.tokens[p] == kWildcard) {
      t.wildcard_mask[p] = true;
      ++t.wildcard_count;
    }
  }
  templates_.push_back(std::move(t));
  const std::size_t idx = templates_.size() - 1;
  index_by_id_.emplace(templates_[idx].id, idx);
  trie_insert(templates_[idx].tokens, static_cast<std::int64_t>(idx));
  next_id_ = std::max(next_id_, id + 1);
  return templates_[idx];
}

const Template* TemplateStore::find(std::int64_t id) const {
  auto it = index_by_id_.find(id);
  if (it == index_by_id_.end()) return nullptr;
  return &templates_[it->second];
}

namespace {

enum class Kind : unsigned char { kFree, kBracket, kPair, kFlag };

std::size_t matching_close(const std::vector<std::string>& tokens, std::size_t open) {
  const std::string& open_tok = tokens[open];
  const std::string close_tok = open_tok == "(" ? ")" : "]";
  int depth = 0;
  for (std::size_t j = open; j < tokens.size(); ++j) {
    if (tokens[j] == open_tok) ++depth;
    if (tokens[j] == close_tok && --depth == 0) return j;
  }
  return tokens.size();
}

}  // namespace

TemplateSplit split_template(const Template& tmpl) {
  const std::vector<std::string>& toks = tmpl.tokens;
  const std::size_t n = toks.size();
  std::vector<Kind> kind(n, Kind::kFree);
  std::vector<TokenRange> bracket_spans;

  // Balanced bracket spans, outermost only; an unmatched opener stays free.
  for (std::size_t i = 0; i < n;) {
    if (toks[i] == "(" || toks[i] == "[") {
      std::size_t j = matching_close(toks, i);
      if (j < n) {
        std::fill(kind.begin() + i, kind.begin() + j + 1, Kind::kBracket);
        bracket_spans.push_back({i, j + 1});
        i = j + 1;
        continue;
      }
    }
    ++i;
  }

  // key = value / key : value units on the remaining tokens.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (kind[i] != Kind::kFree || (toks[i] != "=" && toks[i] != ":")) continue;
    if (kind[i - 1] != Kind::kFree || kind[i + 1] != Kind::kFree) continue;
    if (is_delimiter_token(toks[i - 1]) || is_delimiter_token(toks[i + 1])) continue;
    kind[i - 1] = kind[i] = kind[i + 1] = Kind::kPair;
    ++i;  // the value cannot begin another unit's key
  }

  // Flag groups: the flag itself plus at most one value token.
  for (std::size_t i = 0; i < n; ++i) {
    if (kind[i] != Kind::kFree || !is_flag_token(toks[i])) continue;
    kind[i] = Kind::kFlag;
    if (i + 1 < n && kind[i + 1] == Kind::kFree && !is_flag_token(toks[i + 1]) &&
        !is_delimiter_token(toks[i + 1])) {
      kind[i + 1] = Kind::kFlag;
      ++i;
    }
  }

  TemplateSplit split;
  split.template_id = tmpl.id;
  std::size_t next_bracket = 0;
  for (std::size_t i = 0; i < n;) {
    if (kind[i] == Kind::kBracket) {
      // Bracket spans were recorded individually; adjacent spans stay apart.
      split.structured_parts.push_back(bracket_spans[next_bracket]);
      i = bracket_spans[next_bracket++].end;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && kind[j] == kind[i]) ++j;
    TokenRange range{i, j};
    if (kind[i] == Kind::kFree) {
      split.free_text_parts.push_back(range);
    } else {
      split.structured_parts.push_back(range);
    }
    i = j;
  }
  return split;
}

}  // namespace logsum

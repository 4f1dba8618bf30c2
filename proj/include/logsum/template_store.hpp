#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace logsum {

inline constexpr std::string_view kWildcard = "*";

struct Template {
  std::int64_t id = 0;
  std::vector<std::string> tokens;     // "*" entries are wildcard slots
  std::vector<bool> wildcard_mask;     // parallel to tokens
  int wildcard_count = 0;
};

struct VariableBinding {
  int ordinal = 0;  // 1-based, in token order over the whole template
  std::string value;
};

struct MatchResult {
  std::int64_t template_id = 0;
  std::vector<VariableBinding> variables;
};

enum class LearnOutcome {
  kMatched,   // an existing template already covers the tokens
  kMerged,    // an existing template was generalized in place
  kInserted,  // stored verbatim as a new template
};

// Token-level templates held in a trie for prefix-shared matching.
//
// Matching is read-only and safe to run concurrently; learn() mutates the
// store and requires exclusive access.
class TemplateStore {
 public:
  explicit TemplateStore(double merge_threshold = 0.6);
  TemplateStore(TemplateStore&&) noexcept = default;
  TemplateStore& operator=(TemplateStore&&) noexcept = default;

  // Best match for the token sequence: templates of equal length whose
  // non-wildcard tokens all agree; fewest wildcards wins, then lowest id.
  // Variable bindings carry the tokens consumed by wildcard slots.
  std::optional<MatchResult> match(std::span<const std::string> tokens) const;

  // Allocation-light variant for hot paths; nullptr on miss.
  const Template* match_views(std::span<const std::string_view> tokens) const;

  // Learns the token sequence: no-op when matched, generalizes the closest
  // equal-length template when agreement reaches the merge threshold
  // (differing slots become wildcards, id kept), otherwise inserts verbatim.
  std::pair<const Template*, LearnOutcome> learn(std::span<const std::string> tokens);

  // Direct insertion with an explicit id, used when loading persisted stores.
  // Throws ConfigError on duplicate ids and ParseError-free validation issues.
  const Template& insert_template(std::int64_t id, std::vector<std::string> tokens);

  const Template* find(std::int64_t id) const;
  const std::vector<Template>& templates() const { return templates_; }
  std::size_t size() const { return templates_.size(); }
  double merge_threshold() const { return merge_threshold_; }
  std::int64_t next_id() const { return next_id_; }

 private:
  struct TrieNode;

  // Edges are kept sorted by token; nodes rarely have more than a handful of
  // children, so a flat vector beats hashing on the hot matching path.
  struct TrieEdge {
    std::string token;
    std::unique_ptr<TrieNode> child;
  };

  struct TrieNode {
    std::vector<TrieEdge> children;
    TrieNode* wildcard = nullptr;  // child for the "*" edge, if any
    std::int64_t template_index = -1;
  };

  static const TrieNode* find_child(const TrieNode& node, std::string_view token);
  static TrieNode& ensure_child(TrieNode& node, std::string_view token);
  static void erase_child(TrieNode& node, std::string_view token);

  void trie_insert(const std::vector<std::string>& tokens, std::int64_t index);
  void trie_remove(const std::vector<std::string>& tokens);
  void descend(const TrieNode& node, std::span<const std::string_view> tokens,
               std::size_t depth, const Template** best) const;

  double merge_threshold_;
  std::int64_t next_id_ = 1;
  std::vector<Template> templates_;
  std::unordered_map<std::int64_t, std::size_t> index_by_id_;
  std::unique_ptr<TrieNode> root_;
};

struct TokenRange {
  std::size_t begin = 0;  // inclusive
  std::size_t end = 0;    // exclusive

  bool operator==(const TokenRange&) const = default;
};

struct TemplateSplit {
  std::int64_t template_id = 0;
  std::vector<TokenRange> free_text_parts;
  std::vector<TokenRange> structured_parts;
};

// Partitions template tokens into structured segments (balanced bracket
// spans, key=value / key:value runs, CLI-flag groups) and free text. The
// ranges are disjoint and cover every token.
TemplateSplit split_template(const Template& tmpl);

}  // namespace logsum

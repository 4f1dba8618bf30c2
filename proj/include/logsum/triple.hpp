#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace logsum {

enum class TripleSource : unsigned char { kRule, kOpenIe };

std::string_view to_string(TripleSource source);
TripleSource triple_source_from(std::string_view text);  // throws ConfigError

// Relational triple (arg1, relation, arg2). The relation is always present;
// an empty arg string means the argument is absent.
struct Triple {
  std::string arg1;
  std::string relation;
  std::string arg2;
  TripleSource source = TripleSource::kRule;
  std::int64_t template_id = -1;  // -1 when not tied to a template
  std::int64_t origin_log = -1;   // 0-based input index; -1 at template level
};

// Element-text equality, ignoring source, template_id and origin_log.
bool same_elements(const Triple& a, const Triple& b);

// Operator-readable one-line rendering: "( arg1 | relation | arg2 )".
std::string render_triple(const Triple& t);

}  // namespace logsum

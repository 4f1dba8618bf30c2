#include "logsum/triple.hpp"

#include "logsum/errors.hpp"

namespace logsum {

std::string_view to_string(TripleSource source) {
  return source == TripleSource::kRule ? "RE" : "OpenIE";
}

TripleSource triple_source_from(std::string_view text) {
  if (text == "RE") return TripleSource::kRule;
  if (text == "OpenIE") return TripleSource::kOpenIe;
  throw ConfigError("unknown triple source: " + std::string(text));
}

bool same_elements(const Triple& a, const Triple& b) {
  return a.arg1 == b.arg1 && a.relation == b.relation && a.arg2 == b.arg2;
}

std::string render_triple(const Triple& t) {
  std::string out;
  out.reserve(t.arg1.size() + t.relation.size() + t.arg2.size() + 10);
  out += "( ";
  out += t.arg1;
  out += " | ";
  out += t.relation;
  out += " | ";
  out += t.arg2;
  out += " )";
  return out;
}

}  // namespace logsum

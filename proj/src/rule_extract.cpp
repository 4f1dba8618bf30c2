#include "logsum/rule_extract.hpp"

#include "logsum/tokenizer.hpp"

namespace logsum {

namespace {

std::string strip_dashes(std::string key) {
  std::size_t head = 0;
  while (head < key.size() && key[head] == '-') ++head;
  if (head > 0 && head < key.size()) key.erase(0, head);
  return key;
}

std::string join(std::span<const std::string> tokens, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out += ' ';
    out += tokens[i];
  }
  return out;
}

// Matching close for a bracket opening the whole segment, or npos.
std::size_t enclosing_close(std::span<const std::string> toks) {
  const std::string& open = toks.front();
  if (open != "(" && open != "[") return std::string::npos;
  const std::string close = open == "(" ? ")" : "]";
  int depth = 0;
  for (std::size_t j = 0; j < toks.size(); ++j) {
    if (toks[j] == open) ++depth;
    if (toks[j] == close && --depth == 0) return j;
  }
  return std::string::npos;
}

}  // namespace

std::vector<Triple> extract_rule_triples(std::span<const std::string> tokens) {
  std::span<const std::string> toks = tokens;
  while (toks.size() >= 2 && enclosing_close(toks) == toks.size() - 1) {
    toks = toks.subspan(1, toks.size() - 2);
  }

  std::vector<Triple> out;
  std::size_t boundary = 0;  // start of the current key candidate
  std::size_t i = 0;
  while (i < toks.size()) {
    const std::string& tok = toks[i];
    if ((tok == "=" || tok == ":") && i > boundary && i + 1 < toks.size() &&
        !is_delimiter_token(toks[i + 1])) {
      Triple t;
      t.arg1 = strip_dashes(join(toks, boundary, i));
      t.relation = "is";
      t.arg2 = toks[i + 1];
      t.source = TripleSource::kRule;
      out.push_back(std::move(t));
      i += 2;
      boundary = i;
      continue;
    }
    const bool pair_ahead = i + 2 < toks.size() &&
                            (toks[i + 1] == "=" || toks[i + 1] == ":") &&
                            !is_delimiter_token(toks[i + 2]);
    if (is_flag_token(tok) && !pair_ahead) {
      Triple t;
      t.arg1 = strip_dashes(tok);
      t.relation = "is";
      t.source = TripleSource::kRule;
      if (i + 1 < toks.size() && !is_delimiter_token(toks[i + 1]) &&
          !is_flag_token(toks[i + 1])) {
        t.arg2 = toks[i + 1];
        i += 2;
      } else {
        t.arg2 = "set";
        i += 1;
      }
      out.push_back(std::move(t));
      boundary = i;
      continue;
    }
    if (is_delimiter_token(tok)) {
      boundary = i + 1;
    }
    ++i;
  }
  return out;
}

}  // namespace logsum

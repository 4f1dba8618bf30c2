#include "logsum/tokenizer.hpp"

#include <array>
#include <cctype>

#include "logsum/errors.hpp"

namespace logsum {

namespace {

constexpr std::string_view kDelimiters = "()[]=:,;";

enum class CharClass : unsigned char { kWord = 0, kSpace, kDelimiter };

// Per-byte classification table; the scan is hot enough that calling
// isspace per character shows up in profiles.
constexpr std::array<CharClass, 256> make_char_table() {
  std::array<CharClass, 256> table{};
  for (char c : {' ', '\t', '\n', '\v', '\f', '\r'}) {
    table[static_cast<unsigned char>(c)] = CharClass::kSpace;
  }
  for (char c : kDelimiters) {
    table[static_cast<unsigned char>(c)] = CharClass::kDelimiter;
  }
  return table;
}

constexpr std::array<CharClass, 256> kCharTable = make_char_table();

CharClass classify(char c) { return kCharTable[static_cast<unsigned char>(c)]; }

bool is_delimiter_char(char c) { return classify(c) == CharClass::kDelimiter; }

// Emits every token of `raw` as a string_view into `raw`.
template <typename Fn>
void walk_tokens(std::string_view raw, Fn&& emit) {
  std::size_t i = 0;
  const std::size_t n = raw.size();
  while (i < n) {
    const CharClass cls = classify(raw[i]);
    if (cls == CharClass::kSpace) {
      ++i;
      continue;
    }
    if (cls == CharClass::kDelimiter) {
      emit(raw.substr(i, 1));
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < n && classify(raw[i]) == CharClass::kWord) {
      ++i;
    }
    std::string_view word = raw.substr(start, i - start);
    if (word.back() != '.') {
      emit(word);
      continue;
    }
    // Detach trailing periods; a run of dots collapses to "." tokens so that
    // re-tokenizing the joined output reproduces itself.
    std::size_t keep = word.find_last_not_of('.');
    if (keep == std::string_view::npos) {
      for (std::size_t k = 0; k < word.size(); ++k) emit(word.substr(k, 1));
    } else {
      emit(word.substr(0, keep + 1));
      for (std::size_t k = keep + 1; k < word.size(); ++k) emit(word.substr(k, 1));
    }
  }
}

}  // namespace

bool is_delimiter_token(std::string_view token) {
  return token.size() == 1 && is_delimiter_char(token[0]);
}

bool is_flag_token(std::string_view token) {
  std::size_t head = 0;
  while (head < token.size() && token[head] == '-') ++head;
  if (head == 0 || head > 2 || head == token.size()) return false;
  return std::isalpha(static_cast<unsigned char>(token[head])) != 0;
}

std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> out;
  walk_tokens(raw, [&](std::string_view tok) { out.emplace_back(tok); });
  if (out.empty()) throw EmptyLog();
  return out;
}

std::size_t tokenize_views(std::string_view raw, std::vector<std::string_view>& out) {
  out.clear();
  walk_tokens(raw, [&](std::string_view tok) { out.push_back(tok); });
  return out.size();
}

}  // namespace logsum

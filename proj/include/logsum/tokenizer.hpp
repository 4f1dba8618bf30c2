#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace logsum {

// True for the single-character tokens ( ) [ ] = : , ; that the tokenizer
// always emits on their own.
bool is_delimiter_token(std::string_view token);

// True for CLI-style flags: one or two leading dashes followed by a letter,
// so "-v" and "--verbose" qualify while "-5" and "--" do not.
bool is_flag_token(std::string_view token);

// Splits a raw log line into tokens: whitespace separates, the delimiter
// characters above become single-character tokens, and trailing sentence
// periods are detached from words ("resumed." -> "resumed", ".") while
// interior periods stay put ("192.168.0.1" survives intact).
//
// Throws EmptyLog when nothing remains.
std::vector<std::string> tokenize(std::string_view raw);

// Zero-copy variant used on hot paths. Every view points into `raw`.
// Appends to `out` (cleared first) and returns the token count; never throws,
// an empty line simply yields zero tokens.
std::size_t tokenize_views(std::string_view raw, std::vector<std::string_view>& out);

}  // namespace logsum

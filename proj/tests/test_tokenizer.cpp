#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "logsum/errors.hpp"
#include "logsum/tokenizer.hpp"

using logsum::tokenize;

namespace {

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace

TEST_CASE("delimiters become single-character tokens") {
  CHECK(tokenize("( Reason = fault )") ==
        std::vector<std::string>{"(", "Reason", "=", "fault", ")"});
  CHECK(tokenize("(Reason=fault)") ==
        std::vector<std::string>{"(", "Reason", "=", "fault", ")"});
  CHECK(tokenize("a[b]c") == std::vector<std::string>{"a", "[", "b", "]", "c"});
  CHECK(tokenize("x:y,z;") == std::vector<std::string>{"x", ":", "y", ",", "z", ";"});
  CHECK(tokenize("()") == std::vector<std::string>{"(", ")"});
}

TEST_CASE("comma separates without consuming the word") {
  CHECK(tokenize("Interface ae3, changed state to down") ==
        std::vector<std::string>{"Interface", "ae3", ",", "changed", "state", "to", "down"});
}

TEST_CASE("trailing sentence periods detach, interior periods stay") {
  CHECK(tokenize("resumed.") == std::vector<std::string>{"resumed", "."});
  CHECK(tokenize("192.168.0.1") == std::vector<std::string>{"192.168.0.1"});
  CHECK(tokenize("192.168.0.1.") == std::vector<std::string>{"192.168.0.1", "."});
  CHECK(tokenize("rebooting...") ==
        std::vector<std::string>{"rebooting", ".", ".", "."});
  CHECK(tokenize("e.g.") == std::vector<std::string>{"e.g", "."});
  CHECK(tokenize("...") == std::vector<std::string>{".", ".", "."});
}

TEST_CASE("full log line splits as expected") {
  CHECK(tokenize("Link bandwidth lost totally is resumed. ( Reason = fault )") ==
        std::vector<std::string>{"Link", "bandwidth", "lost", "totally", "is", "resumed",
                                 ".", "(", "Reason", "=", "fault", ")"});
}

TEST_CASE("empty and whitespace-only lines raise EmptyLog") {
  CHECK_THROWS_AS(tokenize(""), logsum::EmptyLog);
  CHECK_THROWS_AS(tokenize("   \t  "), logsum::EmptyLog);
}

TEST_CASE("tokenization of joined output is idempotent") {
  std::mt19937_64 rng(20260814);
  const std::string charset = "abcXYZ019 ()[]=:,;.-_/ ..  ";
  for (int round = 0; round < 300; ++round) {
    std::string raw;
    const std::size_t len = 1 + rng() % 40;
    for (std::size_t i = 0; i < len; ++i) raw += charset[rng() % charset.size()];
    std::vector<std::string> first;
    try {
      first = tokenize(raw);
    } catch (const logsum::EmptyLog&) {
      continue;
    }
    CAPTURE(raw);
    CHECK(tokenize(join(first)) == first);
  }
}

TEST_CASE("view tokenizer agrees with the owning tokenizer") {
  const std::string raw = "Session s-17 closed, retrying... ( code = 7 )";
  std::vector<std::string_view> views;
  logsum::tokenize_views(raw, views);
  const std::vector<std::string> owned = tokenize(raw);
  REQUIRE(views.size() == owned.size());
  for (std::size_t i = 0; i < owned.size(); ++i) CHECK(views[i] == owned[i]);
  CHECK(logsum::tokenize_views("", views) == 0);
}

TEST_CASE("token class helpers") {
  CHECK(logsum::is_delimiter_token("("));
  CHECK(logsum::is_delimiter_token("="));
  CHECK_FALSE(logsum::is_delimiter_token("=="));
  CHECK_FALSE(logsum::is_delimiter_token("a"));
  CHECK(logsum::is_flag_token("-v"));
  CHECK(logsum::is_flag_token("--verbose"));
  CHECK_FALSE(logsum::is_flag_token("-5"));
  CHECK_FALSE(logsum::is_flag_token("--"));
  CHECK_FALSE(logsum::is_flag_token("-"));
  CHECK_FALSE(logsum::is_flag_token("plain"));
}

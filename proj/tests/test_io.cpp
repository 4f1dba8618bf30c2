#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "logsum/errors.hpp"
#include "logsum/io.hpp"
#include "logsum/tokenizer.hpp"
#include "support/testutil.hpp"

using logsum::GoldGroup;
using logsum::TemplateStore;
using logsum::Triple;

namespace {

template <typename Fn>
void expect_parse_error(Fn fn, const std::string& needle) {
  try {
    fn();
    FAIL_CHECK("expected ParseError containing: " << needle);
  } catch (const logsum::ParseError& e) {
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("templates round trip through jsonl") {
  TemplateStore store;
  store.learn(logsum::tokenize("job 12 finished with rc = 0"));
  store.learn(logsum::tokenize("job 90 finished with rc = 0"));
  store.learn(logsum::tokenize("cache full , sweep scheduled"));

  std::stringstream buffer;
  logsum::save_templates(store, buffer);
  const TemplateStore loaded = logsum::load_templates(buffer, "mem");

  REQUIRE(loaded.size() == store.size());
  for (const logsum::Template& orig : store.templates()) {
    const logsum::Template* copy = loaded.find(orig.id);
    REQUIRE(copy != nullptr);
    CHECK(copy->tokens == orig.tokens);
    CHECK(copy->wildcard_count == orig.wildcard_count);
  }

  const auto match = loaded.match(logsum::tokenize("job 55 finished with rc = 0"));
  REQUIRE(match.has_value());
  CHECK(match->template_id == 1);
  REQUIRE(match->variables.size() == 1);
  CHECK(match->variables[0].value == "55");
}

TEST_CASE("template loading rejects malformed records") {
  auto load = [](const std::string& text) {
    std::istringstream in(text);
    return logsum::load_templates(in, "tmpl.jsonl");
  };
  expect_parse_error([&] { load("{oops"); }, "tmpl.jsonl:1");
  expect_parse_error([&] { load("[1,2]\n"); }, "object");
  expect_parse_error([&] { load(R"({"tokens":["a"]})"); }, "id");
  expect_parse_error([&] { load(R"({"id":1,"tokens":[]})"); }, "tokens");
  expect_parse_error([&] { load(R"({"id":1,"tokens":["a",7]})"); }, "strings");
  expect_parse_error(
      [&] { load("{\"id\":1,\"tokens\":[\"a\"]}\n{\"id\":1,\"tokens\":[\"b\"]}\n"); },
      "tmpl.jsonl:2");

  std::istringstream blanks("\n{\"id\":4,\"tokens\":[\"x\",\"*\"]}\n\n");
  const TemplateStore store = logsum::load_templates(blanks, "mem");
  CHECK(store.size() == 1);
  CHECK(store.find(4)->wildcard_count == 1);
  CHECK(store.next_id() == 5);
}

TEST_CASE("triples round trip and omit absent arguments") {
  std::vector<Triple> triples(2);
  triples[0].arg1 = "Reason";
  triples[0].relation = "is";
  triples[0].arg2 = "overrun";
  triples[0].source = logsum::TripleSource::kRule;
  triples[0].origin_log = 3;
  triples[0].template_id = 1;
  triples[1].arg1 = "service";
  triples[1].relation = "restarted";
  triples[1].source = logsum::TripleSource::kOpenIe;

  std::stringstream buffer;
  logsum::write_triples(triples, buffer);

  std::istringstream lines(buffer.str());
  std::string first_line;
  std::getline(lines, first_line);
  const nlohmann::json first = nlohmann::json::parse(first_line);
  CHECK(first["origin_log"] == 3);
  CHECK(first["template_id"] == 1);
  CHECK(first["source"] == "RE");
  CHECK(first["elements"].size() == 3);
  std::string second_line;
  std::getline(lines, second_line);
  const nlohmann::json second = nlohmann::json::parse(second_line);
  CHECK(second["origin_log"].is_null());
  CHECK(second["template_id"].is_null());
  CHECK(second["elements"].size() == 2);  // no arg2 element

  buffer.seekg(0);
  const std::vector<Triple> loaded = logsum::read_triples(buffer, "mem");
  REQUIRE(loaded.size() == 2);
  CHECK(logsum::same_elements(loaded[0], triples[0]));
  CHECK(loaded[0].origin_log == 3);
  CHECK(loaded[0].template_id == 1);
  CHECK(loaded[0].source == logsum::TripleSource::kRule);
  CHECK(logsum::same_elements(loaded[1], triples[1]));
  CHECK(loaded[1].origin_log == -1);
  CHECK(loaded[1].template_id == -1);
  CHECK(loaded[1].source == logsum::TripleSource::kOpenIe);
}

TEST_CASE("triple reading rejects malformed records") {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return logsum::read_triples(in, "t.jsonl");
  };
  expect_parse_error([&] { read(R"({"elements":[]})"); }, "source");
  expect_parse_error(
      [&] { read(R"({"source":"guess","elements":[{"role":"relation","text":"is"}]})"); },
      "t.jsonl:1");
  expect_parse_error(
      [&] { read(R"({"source":"RE","elements":[{"role":"arg1","text":"x"}]})"); },
      "relation");
  expect_parse_error(
      [&] { read(R"({"source":"RE","elements":[{"role":"verb","text":"is"}]})"); },
      "role");
  expect_parse_error([&] { read(R"({"source":"RE","origin_log":"x","elements":[]})"); },
                     "origin_log");
}

TEST_CASE("summaries serialize rank ordered records") {
  logsum::RankedSummary summary;
  summary.entries.resize(2);
  summary.entries[0].triple.arg1 = "Link bandwidth";
  summary.entries[0].triple.relation = "is";
  summary.entries[0].triple.arg2 = "resumed";
  summary.entries[0].score = 1.25;
  summary.entries[0].multiplicity = 4;
  summary.entries[1].triple.arg1 = "Reason";
  summary.entries[1].triple.relation = "is";
  summary.entries[1].triple.arg2 = "overrun";
  summary.entries[1].score = 0.75;
  summary.entries[1].multiplicity = 1;

  std::ostringstream out;
  logsum::write_summary(summary, out);
  std::istringstream lines(out.str());
  std::string line;
  int expected_rank = 1;
  while (std::getline(lines, line)) {
    const nlohmann::json record = nlohmann::json::parse(line);
    CHECK(record["rank"] == expected_rank++);
    CHECK(record["elements"].is_array());
    CHECK(record["score"].is_number());
    CHECK(record["multiplicity"].is_number_integer());
  }
  CHECK(expected_rank == 3);

  std::ostringstream text;
  logsum::write_summary_text(summary, text);
  CHECK(text.str() ==
        "( Link bandwidth | is | resumed )\n( Reason | is | overrun )\n");
}

TEST_CASE("log summaries serialize text entries") {
  logsum::RankedLogSummary summary;
  summary.entries.resize(1);
  summary.entries[0].text = "link is down";
  summary.entries[0].score = 0.5;
  summary.entries[0].multiplicity = 7;

  std::ostringstream out;
  logsum::write_log_summary(summary, out);
  const nlohmann::json record = nlohmann::json::parse(out.str());
  CHECK(record["rank"] == 1);
  CHECK(record["text"] == "link is down");
  CHECK(record["multiplicity"] == 7);

  std::ostringstream text;
  logsum::write_log_summary_text(summary, text);
  CHECK(text.str() == "link is down\n");
}

TEST_CASE("gold groups parse the compact triple form") {
  std::istringstream in(
      R"({"group_id":1,"logs":["a up","a down"],"gold_triples":[["a","is","up"],[null,"is","down"]]})"
      "\n"
      R"({"group_id":2,"logs":["b ok"],"gold_triples":[]})"
      "\n");
  const std::vector<GoldGroup> groups = logsum::read_gold_groups(in, "gold.jsonl");
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].group_id == 1);
  CHECK(groups[0].logs.size() == 2);
  REQUIRE(groups[0].gold_triples.size() == 2);
  CHECK(groups[0].gold_triples[0].arg1 == "a");
  CHECK(groups[0].gold_triples[1].arg1.empty());
  CHECK(groups[0].gold_triples[1].arg2 == "down");
  CHECK(groups[1].gold_triples.empty());
}

TEST_CASE("gold group validation") {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return logsum::read_gold_groups(in, "gold.jsonl");
  };
  expect_parse_error([&] { read(R"({"logs":["a"],"gold_triples":[]})"); }, "group_id");
  expect_parse_error([&] { read(R"({"group_id":1,"logs":[],"gold_triples":[]})"); },
                     "logs");
  expect_parse_error(
      [&] {
        read(
            "{\"group_id\":1,\"logs\":[\"a\"],\"gold_triples\":[]}\n"
            "{\"group_id\":1,\"logs\":[\"b\"],\"gold_triples\":[]}\n");
      },
      "duplicate group_id");
  expect_parse_error(
      [&] { read(R"({"group_id":1,"logs":["a"],"gold_triples":[["x","y"]]})"); },
      "triple must be");
  expect_parse_error(
      [&] { read(R"({"group_id":1,"logs":["a"],"gold_triples":[["x",null,"z"]]})"); },
      "relation");
}

TEST_CASE("prediction files") {
  std::istringstream summaries(
      R"({"group_id":1,"summary":"all good"})"
      "\n");
  const auto preds = logsum::read_predicted_summaries(summaries, "p.jsonl");
  REQUIRE(preds.size() == 1);
  CHECK(preds[0].group_id == 1);
  CHECK(preds[0].summary == "all good");

  std::istringstream triples(
      R"({"group_id":4,"triples":[["a","is",null]]})"
      "\n");
  const auto tpreds = logsum::read_predicted_triples(triples, "p.jsonl");
  REQUIRE(tpreds.size() == 1);
  CHECK(tpreds[0].group_id == 4);
  REQUIRE(tpreds[0].triples.size() == 1);
  CHECK(tpreds[0].triples[0].arg2.empty());

  expect_parse_error(
      [] {
        std::istringstream in(R"({"group_id":1})");
        logsum::read_predicted_summaries(in, "p.jsonl");
      },
      "summary");
  expect_parse_error(
      [] {
        std::istringstream in(R"({"group_id":1,"triples":7})");
        logsum::read_predicted_triples(in, "p.jsonl");
      },
      "triples");
}

TEST_CASE("log lines keep blanks and drop a trailing carriage return") {
  testutil::TempDir dir("io");
  testutil::write_file(dir.path("logs.txt"), "alpha one\r\nbeta two\n\ngamma three");
  const std::vector<std::string> lines = logsum::read_log_lines(dir.path("logs.txt"));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "alpha one");
  CHECK(lines[1] == "beta two");
  CHECK(lines[2].empty());
  CHECK(lines[3] == "gamma three");

  CHECK_THROWS_AS(logsum::read_log_lines(dir.path("missing.txt")), logsum::ConfigError);
}

TEST_CASE("file overloads create and read real files") {
  testutil::TempDir dir("io_files");
  TemplateStore store;
  store.learn(logsum::tokenize("disk d1 degraded"));
  logsum::save_templates(store, dir.path("templates.jsonl"));
  const TemplateStore loaded = logsum::load_templates(dir.path("templates.jsonl"));
  CHECK(loaded.size() == 1);

  std::vector<Triple> triples(1);
  triples[0].arg1 = "disk d1";
  triples[0].relation = "degraded";
  logsum::write_triples(triples, dir.path("triples.jsonl"));
  const std::vector<Triple> back = logsum::read_triples(dir.path("triples.jsonl"));
  REQUIRE(back.size() == 1);
  CHECK(back[0].arg1 == "disk d1");

  CHECK_THROWS_AS(logsum::read_triples(dir.path("nope.jsonl")), logsum::ConfigError);
}

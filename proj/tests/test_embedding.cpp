#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "logsum/embedding.hpp"
#include "logsum/errors.hpp"
#include "logsum/triple.hpp"

using logsum::EmbeddingTable;
using logsum::MeanVector;
using logsum::Triple;

namespace {

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("fnv1a64 known values") {
  CHECK(logsum::fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(logsum::fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(logsum::fnv1a64("kernel") == 0x52f8ab92f7c3fb18ull);
}

TEST_CASE("out of vocabulary vectors are deterministic unit vectors") {
  EmbeddingTable table(4);
  const std::vector<double> v = table.vector_for("kernel");
  REQUIRE(v.size() == 4);
  CHECK(v[0] == doctest::Approx(0.25310648870302016).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(-0.084791618243436923).epsilon(1e-12));
  CHECK(v[2] == doctest::Approx(-0.75328323430660404).epsilon(1e-12));
  CHECK(v[3] == doctest::Approx(0.60109221901857068).epsilon(1e-12));
  CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(table.vector_for("Kernel") == v);
  CHECK(table.vector_for("kernel") == v);

  EmbeddingTable wide(8);
  const std::vector<double> w = wide.vector_for("vlan-interface");
  CHECK(w[0] == doctest::Approx(0.25052710656248317).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(0.44835064231146149).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(-0.24841706654713636).epsilon(1e-12));
  CHECK(norm(w) == doctest::Approx(1.0).epsilon(1e-12));

  for (const char* word : {"alpha", "ae3", "overrun", "x"}) {
    CHECK(norm(table.vector_for(word)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("stored vectors win over the fallback and keys fold case") {
  EmbeddingTable table(2);
  table.insert("Alpha", {1.0, 2.0});
  CHECK(table.contains("alpha"));
  CHECK(table.contains("ALPHA"));
  CHECK_FALSE(table.contains("beta"));
  CHECK(table.vector_for("aLpHa") == std::vector<double>{1.0, 2.0});
  CHECK(table.size() == 1);

  table.insert("alpha", {5.0, 6.0});
  CHECK(table.size() == 1);
  CHECK(table.vector_for("Alpha") == std::vector<double>{5.0, 6.0});
}

TEST_CASE("dimension checks") {
  CHECK_THROWS_AS(EmbeddingTable(0), logsum::ConfigError);
  EmbeddingTable table(3);
  CHECK_THROWS_AS(table.insert("x", {1.0, 2.0}), logsum::DimensionError);
}

TEST_CASE("accumulate matches vector_for for hits and misses") {
  EmbeddingTable table(3);
  table.insert("seen", {0.5, -1.0, 2.0});
  for (const char* word : {"seen", "unseen"}) {
    std::vector<double> sum(3, 1.0);
    table.accumulate(word, sum);
    const std::vector<double> direct = table.vector_for(word);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(sum[i] == doctest::Approx(1.0 + direct[i]).epsilon(1e-15));
    }
  }
}

TEST_CASE("parses the word2vec text format") {
  std::istringstream in(
      "3 2\n"
      "Alpha 1.0 2.0\n"
      "\n"
      "beta -0.25 0.125\n"
      "alpha 9 9\n");
  EmbeddingTable table = EmbeddingTable::parse(in, "mem");
  CHECK(table.dimension() == 2);
  CHECK(table.size() == 2);
  CHECK(table.vector_for("alpha") == std::vector<double>{9.0, 9.0});
  CHECK(table.vector_for("beta") == std::vector<double>{-0.25, 0.125});
}

TEST_CASE("parse errors carry source and line") {
  auto expect_parse_error = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      EmbeddingTable::parse(in, "emb.txt");
      FAIL_CHECK("expected ParseError for: " << text);
    } catch (const logsum::ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_parse_error("", "emb.txt:1");
  expect_parse_error("2\n", "header");
  expect_parse_error("1 0\n", "header");
  expect_parse_error("1 2 3\n", "header");
  expect_parse_error("1 2\nword 0.5\n", "emb.txt:2");
  expect_parse_error("1 2\nword 0.5 oops\n", "bad vector component");
  expect_parse_error("1 2\nword 0.5 nan\n", "non-finite");
}

TEST_CASE("triple vector is the mean over all element tokens") {
  EmbeddingTable table(2);
  table.insert("a", {1.0, 0.0});
  table.insert("b", {0.0, 1.0});
  table.insert("is", {1.0, 1.0});
  table.insert("c", {3.0, 3.0});

  Triple t;
  t.arg1 = "a b";
  t.relation = "is";
  t.arg2 = "c";
  const MeanVector mv = logsum::triple_vector(table, t);
  CHECK(mv.word_count == 4);
  CHECK(mv.components[0] == doctest::Approx(1.25));
  CHECK(mv.components[1] == doctest::Approx(1.25));

  Triple no_arg2;
  no_arg2.arg1 = "a";
  no_arg2.relation = "is";
  const MeanVector mv2 = logsum::triple_vector(table, no_arg2);
  CHECK(mv2.word_count == 2);
  CHECK(mv2.components[0] == doctest::Approx(1.0));
  CHECK(mv2.components[1] == doctest::Approx(0.5));
}

TEST_CASE("text vector handles empty and whitespace input") {
  EmbeddingTable table(2);
  const MeanVector empty = logsum::text_vector(table, "");
  CHECK(empty.word_count == 0);
  CHECK(empty.components == std::vector<double>{0.0, 0.0});
  const MeanVector blank = logsum::text_vector(table, "   ");
  CHECK(blank.word_count == 0);

  table.insert("x", {2.0, 4.0});
  const MeanVector one = logsum::text_vector(table, " x ");
  CHECK(one.word_count == 1);
  CHECK(one.components[0] == doctest::Approx(2.0));
}

#include "logsum/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "logsum/errors.hpp"
#include "logsum/tokenizer.hpp"

namespace logsum {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

namespace {

struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [-1, 1).
  double next_signed_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }
};

std::string lowered(std::string_view word) {
  std::string out(word);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Deterministic unit vector for a word missing from the table.
void oov_vector(std::string_view lowered_word, std::span<double> out) {
  SplitMix64 rng{fnv1a64(lowered_word)};
  double norm_sq = 0.0;
  for (double& x : out) {
    x = rng.next_signed_unit();
    norm_sq += x * x;
  }
  if (norm_sq == 0.0) {
    if (!out.empty()) out[0] = 1.0;
    return;
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : out) x *= inv;
}

double parse_component(std::string_view text, const std::string& source, std::size_t line) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(source, line, "bad vector component '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(source, line, "non-finite vector component");
  }
  return value;
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw ConfigError("embedding dimension must be positive");
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open embeddings file: " + path.string());
  return parse(in, path.string());
}

EmbeddingTable EmbeddingTable::parse(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(source_name, 1, "missing word2vec header");
  }
  std::istringstream header(line);
  long long vocab = 0;
  long long dim = 0;
  if (!(header >> vocab >> dim) || vocab < 0 || dim <= 0) {
    throw ParseError(source_name, 1, "header must be '<vocab_count> <dimension>'");
  }
  std::string trailing;
  if (header >> trailing) {
    throw ParseError(source_name, 1, "header must be '<vocab_count> <dimension>'");
  }

  EmbeddingTable table(static_cast<std::size_t>(dim));
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string word;
    row >> word;
    if (word.empty()) continue;
    std::vector<double> vec;
    vec.reserve(static_cast<std::size_t>(dim));
    std::string component;
    while (row >> component) {
      vec.push_back(parse_component(component, source_name, line_no));
    }
    if (vec.size() != static_cast<std::size_t>(dim)) {
      throw ParseError(source_name, line_no,
                       "expected " + std::to_string(dim) + " components, got " +
                           std::to_string(vec.size()));
    }
    table.insert(word, std::move(vec));
  }
  return table;
}

void EmbeddingTable::insert(std::string_view word, std::vector<double> vector) {
  if (vector.size() != dimension_) {
    throw DimensionError("vector for '" + std::string(word) + "' has length " +
                         std::to_string(vector.size()) + ", table dimension is " +
                         std::to_string(dimension_));
  }
  vectors_.insert_or_assign(lowered(word), std::move(vector));
}

bool EmbeddingTable::contains(std::string_view word) const {
  return vectors_.find(lowered(word)) != vectors_.end();
}

std::vector<double> EmbeddingTable::vector_for(std::string_view word) const {
  const std::string low = lowered(word);
  if (auto it = vectors_.find(low); it != vectors_.end()) return it->second;
  std::vector<double> out(dimension_);
  oov_vector(low, out);
  return out;
}

void EmbeddingTable::accumulate(std::string_view word, std::span<double> sum) const {
  const std::string low = lowered(word);
  if (auto it = vectors_.find(low); it != vectors_.end()) {
    for (std::size_t i = 0; i < dimension_; ++i) sum[i] += it->second[i];
    return;
  }
  thread_local std::vector<double> scratch;
  scratch.assign(dimension_, 0.0);
  oov_vector(low, scratch);
  for (std::size_t i = 0; i < dimension_; ++i) sum[i] += scratch[i];
}

namespace {

MeanVector mean_over_tokens(const EmbeddingTable& table,
                            const std::vector<std::string_view>& tokens) {
  MeanVector mean;
  mean.components.assign(table.dimension(), 0.0);
  for (std::string_view tok : tokens) {
    table.accumulate(tok, mean.components);
    ++mean.word_count;
  }
  if (mean.word_count > 0) {
    const double inv = 1.0 / static_cast<double>(mean.word_count);
    for (double& x : mean.components) x *= inv;
  }
  return mean;
}

}  // namespace

MeanVector triple_vector(const EmbeddingTable& table, const Triple& triple) {
  std::vector<std::string_view> tokens;
  std::vector<std::string_view> part;
  for (const std::string* element : {&triple.arg1, &triple.relation, &triple.arg2}) {
    tokenize_views(*element, part);
    tokens.insert(tokens.end(), part.begin(), part.end());
  }
  return mean_over_tokens(table, tokens);
}

MeanVector text_vector(const EmbeddingTable& table, std::string_view text) {
  std::vector<std::string_view> tokens;
  tokenize_views(text, tokens);
  return mean_over_tokens(table, tokens);
}

}  // namespace logsum

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "logsum/triple.hpp"

namespace logsum {

// 64-bit FNV-1a over raw bytes; seeds the out-of-vocabulary generator.
std::uint64_t fnv1a64(std::string_view bytes);

// Word vectors in the word2vec text format:
//   <vocab_count> <dimension>
//   <word> <v1> ... <vdim>
// Words are lowercased on insert and lookup. Unknown words fall back to a
// deterministic unit vector derived from the word's bytes, so the pipeline
// never stalls on vocabulary gaps.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension);

  static EmbeddingTable load(const std::filesystem::path& path);
  static EmbeddingTable parse(std::istream& in, const std::string& source_name);

  // Inserts or overwrites (last write wins). Throws DimensionError on a
  // length mismatch.
  void insert(std::string_view word, std::vector<double> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }
  bool contains(std::string_view word) const;

  // Stored vector, or the deterministic OOV vector for unknown words.
  std::vector<double> vector_for(std::string_view word) const;

  // Accumulates vector_for(word) into `sum` without allocating.
  void accumulate(std::string_view word, std::span<double> sum) const;

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::size_t dimension_;
  std::unordered_map<std::string, std::vector<double>, StringHash, std::equal_to<>> vectors_;
};

// Mean of the word vectors over all element texts of the triple, tokenized
// with the log tokenizer. word_count 0 yields the zero vector.
struct MeanVector {
  std::vector<double> components;
  int word_count = 0;
};

MeanVector triple_vector(const EmbeddingTable& table, const Triple& triple);

// Same mean over an arbitrary text (used by the whole-log baseline).
MeanVector text_vector(const EmbeddingTable& table, std::string_view text);

}  // namespace logsum

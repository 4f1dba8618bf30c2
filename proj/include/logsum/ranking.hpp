#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "logsum/embedding.hpp"
#include "logsum/triple.hpp"

namespace logsum {

struct RankConfig {
  double damping = 0.85;
  double tolerance = 1e-6;
  int max_iterations = 100;
  int top_k = 5;

  void validate() const;  // throws ConfigError
};

// Cosine of the angle between two equal-length vectors; 0 when either norm
// vanishes. Throws DimensionError on a length mismatch.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

// Dense symmetric similarity matrix with zero diagonal; negative cosines are
// clamped to 0 so weights stay non-negative.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) { values_[i * n_ + j] = v; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * n_, n_};
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

// Pairwise clamped cosines between the vectors. The _serial and _parallel
// kernels compute identical results; the unsuffixed entry point picks the
// parallel kernel when OpenMP is enabled.
SimilarityMatrix similarity_matrix_serial(std::span<const MeanVector> vectors);
SimilarityMatrix similarity_matrix_parallel(std::span<const MeanVector> vectors);
SimilarityMatrix similarity_matrix(std::span<const MeanVector> vectors);

// Undirected weighted graph: an edge joins i and j whenever the similarity
// is positive. Out-weight sums are precomputed for the rank update.
struct WeightedGraph {
  SimilarityMatrix weights;
  std::vector<double> out_weight_sum;

  std::size_t size() const { return weights.size(); }
};

WeightedGraph build_graph(SimilarityMatrix similarity);

struct TextRankScores {
  std::vector<double> scores;
  bool converged = false;
  int iterations = 0;
};

// Damped weighted PageRank over the graph: scores start at 1 and sweep
//   WS(Vi) = (1 - d) + d * sum_j w(j,i) / out_sum(j) * WS(Vj)
// synchronously until the largest per-vertex change drops below the
// tolerance or max_iterations is hit (converged=false in that case).
TextRankScores weighted_textrank_serial(const WeightedGraph& graph, const RankConfig& config);
TextRankScores weighted_textrank_parallel(const WeightedGraph& graph, const RankConfig& config);
TextRankScores weighted_textrank(const WeightedGraph& graph, const RankConfig& config);

struct SummaryEntry {
  Triple triple;
  double score = 0.0;
  int multiplicity = 1;
};

struct RankedSummary {
  std::vector<SummaryEntry> entries;  // score-descending, truncated to top_k
  std::size_t distinct_triples = 0;
  bool converged = true;
  int iterations = 0;
};

// Deduplicates triples by element texts, ranks the distinct ones by weighted
// TextRank over triple-vector similarities, and keeps the top_k. Ties break
// by earliest origin_log (absent origins last), then input order.
RankedSummary rank_triples(std::span<const Triple> triples, const EmbeddingTable& table,
                           const RankConfig& config);

struct RankedLog {
  std::string text;
  double score = 0.0;
  int multiplicity = 1;
};

struct RankedLogSummary {
  std::vector<RankedLog> entries;
  std::size_t distinct_logs = 0;
  bool converged = true;
  int iterations = 0;
};

// Whole-log baseline: ranks deduplicated log lines by the same machinery,
// using the mean word vector of each line.
RankedLogSummary sentence_textrank(std::span<const std::string> logs,
                                   const EmbeddingTable& table, const RankConfig& config);

}  // namespace logsum

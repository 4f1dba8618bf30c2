#include "logsum/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "logsum/errors.hpp"
#include "logsum/tokenizer.hpp"

namespace logsum {

void RankConfig::validate() const {
  if (!(damping >= 0.0) || damping >= 1.0) {
    throw ConfigError("damping must lie in [0, 1)");
  }
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  if (top_k < 1) throw ConfigError("top_k must be at least 1");
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("cosine_similarity: lengths " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()) + " differ");
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

inline double clamped_cosine(const MeanVector& a, const MeanVector& b) {
  return std::max(0.0, cosine_similarity(a.components, b.components));
}

}  // namespace

SimilarityMatrix similarity_matrix_serial(std::span<const MeanVector> vectors) {
  const std::size_t n = vectors.size();
  SimilarityMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = clamped_cosine(vectors[i], vectors[j]);
      m.set(i, j, w);
      m.set(j, i, w);
    }
  }
  return m;
}

SimilarityMatrix similarity_matrix_parallel(std::span<const MeanVector> vectors) {
  const std::size_t n = vectors.size();
  SimilarityMatrix m(n);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
      const double w = clamped_cosine(vectors[static_cast<std::size_t>(i)], vectors[j]);
      m.set(static_cast<std::size_t>(i), j, w);
      m.set(j, static_cast<std::size_t>(i), w);
    }
  }
  return m;
}

SimilarityMatrix similarity_matrix(std::span<const MeanVector> vectors) {
#if defined(_OPENMP)
  return similarity_matrix_parallel(vectors);
#else
  return similarity_matrix_serial(vectors);
#endif
}

WeightedGraph build_graph(SimilarityMatrix similarity) {
  WeightedGraph graph;
  const std::size_t n = similarity.size();
  graph.out_weight_sum.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (double w : similarity.row(i)) sum += w;
    graph.out_weight_sum[i] = sum;
  }
  graph.weights = std::move(similarity);
  return graph;
}

namespace {

template <bool Parallel>
TextRankScores textrank_impl(const WeightedGraph& graph, const RankConfig& config) {
  config.validate();
  const std::size_t n = graph.size();
  TextRankScores result;
  result.scores.assign(n, 1.0);
  if (n == 0) {
    result.converged = true;
    return result;
  }

  // Normalized contribution factors: w(j,i) / out_sum(j), fixed across
  // sweeps, so each iteration is one matrix-vector pass.
  std::vector<double> factor(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (graph.out_weight_sum[j] <= 0.0) continue;
    const double inv = 1.0 / graph.out_weight_sum[j];
    std::span<const double> row = graph.weights.row(j);
    for (std::size_t i = 0; i < n; ++i) factor[i * n + j] = row[i] * inv;
  }

  std::vector<double> next(n, 0.0);
  const double d = config.damping;
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    double max_delta = 0.0;
#if defined(_OPENMP)
#pragma omp parallel for reduction(max : max_delta) schedule(static) if (Parallel)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      const double* row = factor.data() + static_cast<std::size_t>(i) * n;
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += row[j] * result.scores[j];
      const double updated = (1.0 - d) + d * sum;
      next[static_cast<std::size_t>(i)] = updated;
      max_delta = std::max(max_delta, std::abs(updated - result.scores[i]));
    }
    result.scores.swap(next);
    result.iterations = iter;
    if (max_delta < config.tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace

TextRankScores weighted_textrank_serial(const WeightedGraph& graph, const RankConfig& config) {
  return textrank_impl<false>(graph, config);
}

TextRankScores weighted_textrank_parallel(const WeightedGraph& graph,
                                          const RankConfig& config) {
  return textrank_impl<true>(graph, config);
}

TextRankScores weighted_textrank(const WeightedGraph& graph, const RankConfig& config) {
#if defined(_OPENMP)
  return weighted_textrank_parallel(graph, config);
#else
  return weighted_textrank_serial(graph, config);
#endif
}

namespace {

struct DistinctKey {
  std::string key;

  static DistinctKey of(const Triple& t) {
    std::string k;
    k.reserve(t.arg1.size() + t.relation.size() + t.arg2.size() + 2);
    k += t.arg1;
    k += '\x1f';
    k += t.relation;
    k += '\x1f';
    k += t.arg2;
    return {std::move(k)};
  }
};

struct Distinct {
  Triple triple;
  int multiplicity = 0;
  std::int64_t first_origin = std::numeric_limits<std::int64_t>::max();
  std::size_t first_index = 0;
};

template <typename Entry>
void order_and_truncate(std::vector<Entry>& entries, std::span<const Distinct> distinct,
                        std::span<const double> scores, int top_k) {
  std::vector<std::size_t> order(distinct.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (distinct[a].first_origin != distinct[b].first_origin) {
      return distinct[a].first_origin < distinct[b].first_origin;
    }
    return distinct[a].first_index < distinct[b].first_index;
  });
  const std::size_t keep = std::min<std::size_t>(order.size(), static_cast<std::size_t>(top_k));
  entries.reserve(keep);
  for (std::size_t r = 0; r < keep; ++r) {
    Entry e;
    e.score = scores[order[r]];
    e.multiplicity = distinct[order[r]].multiplicity;
    if constexpr (requires { e.triple; }) {
      e.triple = distinct[order[r]].triple;
    } else {
      e.text = distinct[order[r]].triple.arg1;
    }
    entries.push_back(std::move(e));
  }
}

}  // namespace

RankedSummary rank_triples(std::span<const Triple> triples, const EmbeddingTable& table,
                           const RankConfig& config) {
  config.validate();
  std::vector<Distinct> distinct;
  std::unordered_map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const Triple& t = triples[i];
    auto [it, inserted] = index_of.try_emplace(DistinctKey::of(t).key, distinct.size());
    if (inserted) {
      Distinct d;
      d.triple = t;
      d.multiplicity = 1;
      d.first_origin =
          t.origin_log >= 0 ? t.origin_log : std::numeric_limits<std::int64_t>::max();
      d.first_index = i;
      distinct.push_back(std::move(d));
    } else {
      ++distinct[it->second].multiplicity;
    }
  }

  RankedSummary summary;
  summary.distinct_triples = distinct.size();
  if (distinct.empty()) return summary;

  std::vector<MeanVector> vectors;
  vectors.reserve(distinct.size());
  for (const Distinct& d : distinct) vectors.push_back(triple_vector(table, d.triple));

  WeightedGraph graph = build_graph(similarity_matrix(vectors));
  TextRankScores ranked = weighted_textrank(graph, config);
  summary.converged = ranked.converged;
  summary.iterations = ranked.iterations;
  order_and_truncate(summary.entries, distinct, ranked.scores, config.top_k);
  return summary;
}

RankedLogSummary sentence_textrank(std::span<const std::string> logs,
                                   const EmbeddingTable& table, const RankConfig& config) {
  config.validate();
  std::vector<Distinct> distinct;
  std::unordered_map<std::string, std::size_t> index_of;
  std::vector<std::string_view> tokens;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    tokenize_views(logs[i], tokens);
    std::string key;
    for (std::string_view tok : tokens) {
      key += tok;
      key += '\x1f';
    }
    auto [it, inserted] = index_of.try_emplace(std::move(key), distinct.size());
    if (inserted) {
      Distinct d;
      d.triple.arg1 = logs[i];  // the raw text rides in arg1
      d.multiplicity = 1;
      d.first_origin = static_cast<std::int64_t>(i);
      d.first_index = i;
      distinct.push_back(std::move(d));
    } else {
      ++distinct[it->second].multiplicity;
    }
  }

  RankedLogSummary summary;
  summary.distinct_logs = distinct.size();
  if (distinct.empty()) return summary;

  std::vector<MeanVector> vectors;
  vectors.reserve(distinct.size());
  for (const Distinct& d : distinct) vectors.push_back(text_vector(table, d.triple.arg1));

  WeightedGraph graph = build_graph(similarity_matrix(vectors));
  TextRankScores ranked = weighted_textrank(graph, config);
  summary.converged = ranked.converged;
  summary.iterations = ranked.iterations;
  order_and_truncate(summary.entries, distinct, ranked.scores, config.top_k);
  return summary;
}

}  // namespace logsum

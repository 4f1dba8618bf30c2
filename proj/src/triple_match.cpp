#include "logsum/triple_match.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "logsum/tokenizer.hpp"

namespace logsum {

namespace {

struct RoleTokens {
  std::vector<std::string_view> arg1;
  std::vector<std::string_view> relation;
  std::vector<std::string_view> arg2;
};

RoleTokens role_tokens(const Triple& t) {
  RoleTokens out;
  tokenize_views(t.arg1, out.arg1);
  tokenize_views(t.relation, out.relation);
  tokenize_views(t.arg2, out.arg2);
  return out;
}

// Multiset-clipped count of gold tokens found in the prediction.
std::size_t clipped_overlap(const std::vector<std::string_view>& pred,
                            const std::vector<std::string_view>& gold) {
  std::unordered_map<std::string_view, std::size_t> counts;
  for (std::string_view tok : pred) ++counts[tok];
  std::size_t overlap = 0;
  for (std::string_view tok : gold) {
    auto it = counts.find(tok);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return overlap;
}

struct Candidate {
  std::size_t overlap;
  std::size_t gold_index;
  std::size_t pred_index;
};

}  // namespace

TripleMatchScore score_triples(std::span<const Triple> predicted,
                               std::span<const Triple> gold, double overlap_threshold) {
  TripleMatchScore score;
  if (predicted.empty() && gold.empty()) {
    score.precision = score.recall = score.f1 = 1.0;
    return score;
  }

  std::vector<RoleTokens> pred_tokens;
  pred_tokens.reserve(predicted.size());
  for (const Triple& t : predicted) pred_tokens.push_back(role_tokens(t));

  std::vector<Candidate> candidates;
  for (std::size_t g = 0; g < gold.size(); ++g) {
    const RoleTokens gt = role_tokens(gold[g]);
    for (std::size_t p = 0; p < predicted.size(); ++p) {
      const RoleTokens& pt = pred_tokens[p];
      bool eligible = true;
      std::size_t total_overlap = 0;
      const std::pair<const std::vector<std::string_view>*,
                      const std::vector<std::string_view>*>
          roles[3] = {{&pt.arg1, &gt.arg1}, {&pt.relation, &gt.relation}, {&pt.arg2, &gt.arg2}};
      for (const auto& [pv, gv] : roles) {
        if (gv->empty()) continue;  // absent gold elements constrain nothing
        const std::size_t overlap = clipped_overlap(*pv, *gv);
        total_overlap += overlap;
        if (static_cast<double>(overlap) <
            overlap_threshold * static_cast<double>(gv->size())) {
          eligible = false;
          break;
        }
      }
      if (eligible) candidates.push_back({total_overlap, g, p});
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    if (a.gold_index != b.gold_index) return a.gold_index < b.gold_index;
    return a.pred_index < b.pred_index;
  });

  std::vector<bool> gold_used(gold.size(), false);
  std::vector<bool> pred_used(predicted.size(), false);
  for (const Candidate& c : candidates) {
    if (gold_used[c.gold_index] || pred_used[c.pred_index]) continue;
    gold_used[c.gold_index] = true;
    pred_used[c.pred_index] = true;
    score.matched.emplace_back(c.pred_index, c.gold_index);
  }
  std::sort(score.matched.begin(), score.matched.end());

  const double matched = static_cast<double>(score.matched.size());
  score.precision =
      predicted.empty() ? 0.0 : matched / static_cast<double>(predicted.size());
  score.recall = gold.empty() ? 1.0 : matched / static_cast<double>(gold.size());
  const double denom = score.precision + score.recall;
  score.f1 = denom == 0.0 ? 0.0 : 2.0 * score.precision * score.recall / denom;
  return score;
}

}  // namespace logsum

#include "logsum/rouge.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "logsum/errors.hpp"
#include "logsum/tokenizer.hpp"

namespace logsum {

RougeScore rouge1(std::string_view candidate, std::string_view reference) {
  std::vector<std::string_view> cand_tokens;
  std::vector<std::string_view> ref_tokens;
  tokenize_views(candidate, cand_tokens);
  tokenize_views(reference, ref_tokens);

  RougeScore score;
  score.candidate_tokens = cand_tokens.size();
  score.reference_tokens = ref_tokens.size();

  std::unordered_map<std::string_view, std::size_t> ref_counts;
  for (std::string_view tok : ref_tokens) ++ref_counts[tok];
  for (std::string_view tok : cand_tokens) {
    auto it = ref_counts.find(tok);
    if (it != ref_counts.end() && it->second > 0) {
      --it->second;
      ++score.overlap;
    }
  }

  if (score.candidate_tokens == 0 && score.reference_tokens == 0) {
    score.precision = score.recall = score.f1 = 1.0;
    return score;
  }
  score.precision = score.candidate_tokens == 0
                        ? 0.0
                        : static_cast<double>(score.overlap) /
                              static_cast<double>(score.candidate_tokens);
  score.recall = score.reference_tokens == 0
                     ? 0.0
                     : static_cast<double>(score.overlap) /
                           static_cast<double>(score.reference_tokens);
  const double denom = score.precision + score.recall;
  score.f1 = denom == 0.0 ? 0.0 : 2.0 * score.precision * score.recall / denom;
  return score;
}

double compression_ratio(std::string_view summary, std::string_view original) {
  if (original.empty()) {
    throw DegenerateInput("compression ratio undefined for empty originals");
  }
  return static_cast<double>(summary.size()) / static_cast<double>(original.size());
}

}  // namespace logsum

#pragma once

#include <cstddef>
#include <string_view>

namespace logsum {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t overlap = 0;
  std::size_t candidate_tokens = 0;
  std::size_t reference_tokens = 0;
};

// Unigram ROUGE with multiset clipping over log-tokenizer tokens.
// precision = overlap / candidate tokens, recall = overlap / reference
// tokens; an empty side scores 0 on its quotient, two empty texts score 1.
RougeScore rouge1(std::string_view candidate, std::string_view reference);

// Summary bytes divided by original bytes. Throws DegenerateInput when the
// original text is empty.
double compression_ratio(std::string_view summary, std::string_view original);

}  // namespace logsum

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "logsum/triple.hpp"

namespace logsum {

struct TripleMatchScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> matched;  // (predicted, gold)
};

// One-to-one greedy matching between predicted and gold triples.
//
// A pair is eligible when, for every non-empty gold element, the fraction of
// that element's tokens also present in the predicted counterpart reaches the
// overlap threshold (empty gold elements constrain nothing). Pairs are taken
// greedily by descending total token overlap, ties by gold index then
// predicted index. Precision is over predictions, recall over gold; both
// count matched pairs. Two empty lists score 1.
TripleMatchScore score_triples(std::span<const Triple> predicted,
                               std::span<const Triple> gold,
                               double overlap_threshold = 0.5);

}  // namespace logsum

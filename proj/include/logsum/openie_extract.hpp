#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logsum/triple.hpp"

namespace logsum {

// Lexicon predicates used by the free-text extractor; exposed for tests.
namespace words {
bool linking_verb(std::string_view lowered);
bool verb_like(std::string_view lowered);
bool preposition_or_particle(std::string_view lowered);
}  // namespace words

// Heuristic clause-level extraction from one free-text segment.
//
// The segment is split into clauses at commas, semicolons, periods, remaining
// delimiters and the conjunctions and/or. Within a verb clause the relation
// head is the first linking verb when one exists (otherwise the first verb);
// trailing prepositions and particles fold into the relation while at least
// one token remains for arg2. arg1 is everything before the first verb-like
// token. A verb clause missing arg1 borrows the preceding comma-separated
// verbless clause; two adjacent verbless clauses pair as an apposition
// (A, is, B). Clauses providing fewer than a predicate plus one argument are
// dropped.
std::vector<Triple> extract_openie_triples(std::span<const std::string> tokens);

}  // namespace logsum

#pragma once

#include <span>
#include <string>
#include <vector>

#include "logsum/triple.hpp"

namespace logsum {

// Extracts triples from one structured segment:
//   key = value / key : value        -> (key, is, value)
//   --flag value                     -> (flag, is, value)
//   --flag (no value)                -> (flag, is, set)
// Enclosing parentheses/brackets are stripped first; leading dashes are
// stripped from keys. Keys may span several tokens ("Link fault Reason = 5").
// A segment none of the forms fit yields no triples.
std::vector<Triple> extract_rule_triples(std::span<const std::string> tokens);

}  // namespace logsum

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "logsum/ranking.hpp"
#include "logsum/template_store.hpp"
#include "logsum/triple.hpp"

namespace logsum {

// All files are JSONL (UTF-8, LF, one record per line) unless noted.

// Template records: {"id": <int>, "tokens": [<string>, ...]}.
void save_templates(const TemplateStore& store, std::ostream& out);
void save_templates(const TemplateStore& store, const std::filesystem::path& path);
TemplateStore load_templates(std::istream& in, const std::string& source_name,
                             double merge_threshold = 0.6);
TemplateStore load_templates(const std::filesystem::path& path,
                             double merge_threshold = 0.6);

// Triple records:
// {"origin_log": <int|null>, "template_id": <int|null>, "source": "RE"|"OpenIE",
//  "elements": [{"role": "arg1"|"relation"|"arg2", "text": <string>}, ...]}
// Absent arguments are omitted from the element list.
void write_triples(std::span<const Triple> triples, std::ostream& out);
void write_triples(std::span<const Triple> triples, const std::filesystem::path& path);
std::vector<Triple> read_triples(std::istream& in, const std::string& source_name);
std::vector<Triple> read_triples(const std::filesystem::path& path);

// Summary records: {"rank": <int>, "score": <double>, "multiplicity": <int>,
// "elements": [...]} ordered by rank.
void write_summary(const RankedSummary& summary, std::ostream& out);
// Plain-text rendering, one "( arg1 | relation | arg2 )" line per entry.
void write_summary_text(const RankedSummary& summary, std::ostream& out);

void write_log_summary(const RankedLogSummary& summary, std::ostream& out);
void write_log_summary_text(const RankedLogSummary& summary, std::ostream& out);

// Gold groups: {"group_id": <int>, "logs": [<string>, ...],
// "gold_triples": [[<arg1|null>, <relation>, <arg2|null>], ...]}
struct GoldGroup {
  std::int64_t group_id = 0;
  std::vector<std::string> logs;
  std::vector<Triple> gold_triples;
};
std::vector<GoldGroup> read_gold_groups(std::istream& in, const std::string& source_name);
std::vector<GoldGroup> read_gold_groups(const std::filesystem::path& path);

// Predictions for evaluation, keyed by group:
// {"group_id": <int>, "summary": <string>} or
// {"group_id": <int>, "triples": [[<arg1|null>, <relation>, <arg2|null>], ...]}
struct PredictedSummary {
  std::int64_t group_id = 0;
  std::string summary;
};
struct PredictedTriples {
  std::int64_t group_id = 0;
  std::vector<Triple> triples;
};
std::vector<PredictedSummary> read_predicted_summaries(std::istream& in,
                                                       const std::string& source_name);
std::vector<PredictedSummary> read_predicted_summaries(const std::filesystem::path& path);
std::vector<PredictedTriples> read_predicted_triples(std::istream& in,
                                                     const std::string& source_name);
std::vector<PredictedTriples> read_predicted_triples(const std::filesystem::path& path);

// Raw log lines; a lone trailing CR per line is stripped. Empty lines are
// kept so callers can report them with accurate line numbers.
std::vector<std::string> read_log_lines(const std::filesystem::path& path);

}  // namespace logsum

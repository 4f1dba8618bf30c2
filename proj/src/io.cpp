#include "logsum/io.hpp"

#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "logsum/errors.hpp"

namespace logsum {

namespace {

using nlohmann::json;

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open input file: " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path.string());
  return out;
}

json parse_line(const std::string& line, const std::string& source, std::size_t line_no) {
  json record = json::parse(line, nullptr, false);
  if (record.is_discarded()) throw ParseError(source, line_no, "invalid JSON");
  if (!record.is_object()) throw ParseError(source, line_no, "expected a JSON object");
  return record;
}

json elements_to_json(const Triple& t) {
  json elements = json::array();
  if (!t.arg1.empty()) elements.push_back({{"role", "arg1"}, {"text", t.arg1}});
  elements.push_back({{"role", "relation"}, {"text", t.relation}});
  if (!t.arg2.empty()) elements.push_back({{"role", "arg2"}, {"text", t.arg2}});
  return elements;
}

// Accepts the compact [arg1|null, relation, arg2|null] form used by gold and
// prediction files.
Triple triple_from_array(const json& arr, const std::string& source, std::size_t line_no) {
  if (!arr.is_array() || arr.size() != 3) {
    throw ParseError(source, line_no, "triple must be [arg1, relation, arg2]");
  }
  Triple t;
  if (!arr[0].is_null()) {
    if (!arr[0].is_string()) throw ParseError(source, line_no, "arg1 must be string or null");
    t.arg1 = arr[0].get<std::string>();
  }
  if (!arr[1].is_string() || arr[1].get<std::string>().empty()) {
    throw ParseError(source, line_no, "relation must be a non-empty string");
  }
  t.relation = arr[1].get<std::string>();
  if (!arr[2].is_null()) {
    if (!arr[2].is_string()) throw ParseError(source, line_no, "arg2 must be string or null");
    t.arg2 = arr[2].get<std::string>();
  }
  return t;
}

}  // namespace

void save_templates(const TemplateStore& store, std::ostream& out) {
  for (const Template& t : store.templates()) {
    json record = {{"id", t.id}, {"tokens", t.tokens}};
    out << record.dump() << '\n';
  }
}

void save_templates(const TemplateStore& store, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  save_templates(store, out);
}

TemplateStore load_templates(std::istream& in, const std::string& source_name,
                             double merge_threshold) {
  TemplateStore store(merge_threshold);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record = parse_line(line, source_name, line_no);
    if (!record.contains("id") || !record["id"].is_number_integer()) {
      throw ParseError(source_name, line_no, "template record needs an integer 'id'");
    }
    if (!record.contains("tokens") || !record["tokens"].is_array() ||
        record["tokens"].empty()) {
      throw ParseError(source_name, line_no,
                       "template record needs a non-empty 'tokens' array");
    }
    std::vector<std::string> tokens;
    tokens.reserve(record["tokens"].size());
    for (const json& tok : record["tokens"]) {
      if (!tok.is_string() || tok.get<std::string>().empty()) {
        throw ParseError(source_name, line_no, "template tokens must be non-empty strings");
      }
      tokens.push_back(tok.get<std::string>());
    }
    try {
      store.insert_template(record["id"].get<std::int64_t>(), std::move(tokens));
    } catch (const ConfigError& e) {
      throw ParseError(source_name, line_no, e.what());
    }
  }
  return store;
}

TemplateStore load_templates(const std::filesystem::path& path, double merge_threshold) {
  std::ifstream in = open_input(path);
  return load_templates(in, path.string(), merge_threshold);
}

void write_triples(std::span<const Triple> triples, std::ostream& out) {
  for (const Triple& t : triples) {
    json record;
    record["origin_log"] = t.origin_log >= 0 ? json(t.origin_log) : json(nullptr);
    record["template_id"] = t.template_id >= 0 ? json(t.template_id) : json(nullptr);
    record["source"] = to_string(t.source);
    record["elements"] = elements_to_json(t);
    out << record.dump() << '\n';
  }
}

void write_triples(std::span<const Triple> triples, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  write_triples(triples, out);
}

std::vector<Triple> read_triples(std::istream& in, const std::string& source_name) {
  std::vector<Triple> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record = parse_line(line, source_name, line_no);
    Triple t;
    if (record.contains("origin_log") && !record["origin_log"].is_null()) {
      if (!record["origin_log"].is_number_integer()) {
        throw ParseError(source_name, line_no, "origin_log must be an integer or null");
      }
      t.origin_log = record["origin_log"].get<std::int64_t>();
    }
    if (record.contains("template_id") && !record["template_id"].is_null()) {
      if (!record["template_id"].is_number_integer()) {
        throw ParseError(source_name, line_no, "template_id must be an integer or null");
      }
      t.template_id = record["template_id"].get<std::int64_t>();
    }
    if (!record.contains("source") || !record["source"].is_string()) {
      throw ParseError(source_name, line_no, "triple record needs a 'source' string");
    }
    try {
      t.source = triple_source_from(record["source"].get<std::string>());
    } catch (const ConfigError& e) {
      throw ParseError(source_name, line_no, e.what());
    }
    if (!record.contains("elements") || !record["elements"].is_array()) {
      throw ParseError(source_name, line_no, "triple record needs an 'elements' array");
    }
    bool saw_relation = false;
    for (const json& el : record["elements"]) {
      if (!el.is_object() || !el.contains("role") || !el.contains("text") ||
          !el["role"].is_string() || !el["text"].is_string()) {
        throw ParseError(source_name, line_no, "elements must be {role, text} objects");
      }
      const std::string role = el["role"].get<std::string>();
      const std::string text = el["text"].get<std::string>();
      if (role == "arg1") {
        t.arg1 = text;
      } else if (role == "relation") {
        if (text.empty()) throw ParseError(source_name, line_no, "relation text is empty");
        t.relation = text;
        saw_relation = true;
      } else if (role == "arg2") {
        t.arg2 = text;
      } else {
        throw ParseError(source_name, line_no, "unknown element role '" + role + "'");
      }
    }
    if (!saw_relation) {
      throw ParseError(source_name, line_no, "triple record is missing the relation");
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Triple> read_triples(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_triples(in, path.string());
}

void write_summary(const RankedSummary& summary, std::ostream& out) {
  int rank = 0;
  for (const SummaryEntry& entry : summary.entries) {
    json record;
    record["rank"] = ++rank;
    record["score"] = entry.score;
    record["multiplicity"] = entry.multiplicity;
    record["elements"] = elements_to_json(entry.triple);
    out << record.dump() << '\n';
  }
}

void write_summary_text(const RankedSummary& summary, std::ostream& out) {
  for (const SummaryEntry& entry : summary.entries) {
    out << render_triple(entry.triple) << '\n';
  }
}

void write_log_summary(const RankedLogSummary& summary, std::ostream& out) {
  int rank = 0;
  for (const RankedLog& entry : summary.entries) {
    json record;
    record["rank"] = ++rank;
    record["score"] = entry.score;
    record["multiplicity"] = entry.multiplicity;
    record["text"] = entry.text;
    out << record.dump() << '\n';
  }
}

void write_log_summary_text(const RankedLogSummary& summary, std::ostream& out) {
  for (const RankedLog& entry : summary.entries) {
    out << entry.text << '\n';
  }
}

std::vector<GoldGroup> read_gold_groups(std::istream& in, const std::string& source_name) {
  std::vector<GoldGroup> out;
  std::unordered_set<std::int64_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record = parse_line(line, source_name, line_no);
    GoldGroup group;
    if (!record.contains("group_id") || !record["group_id"].is_number_integer()) {
      throw ParseError(source_name, line_no, "gold record needs an integer 'group_id'");
    }
    group.group_id = record["group_id"].get<std::int64_t>();
    if (!seen.insert(group.group_id).second) {
      throw ParseError(source_name, line_no,
                       "duplicate group_id " + std::to_string(group.group_id));
    }
    if (!record.contains("logs") || !record["logs"].is_array() || record["logs"].empty()) {
      throw ParseError(source_name, line_no, "gold record needs a non-empty 'logs' array");
    }
    for (const json& log : record["logs"]) {
      if (!log.is_string()) throw ParseError(source_name, line_no, "logs must be strings");
      group.logs.push_back(log.get<std::string>());
    }
    if (!record.contains("gold_triples") || !record["gold_triples"].is_array()) {
      throw ParseError(source_name, line_no, "gold record needs a 'gold_triples' array");
    }
    for (const json& arr : record["gold_triples"]) {
      group.gold_triples.push_back(triple_from_array(arr, source_name, line_no));
    }
    out.push_back(std::move(group));
  }
  return out;
}

std::vector<GoldGroup> read_gold_groups(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_gold_groups(in, path.string());
}

std::vector<PredictedSummary> read_predicted_summaries(std::istream& in,
                                                       const std::string& source_name) {
  std::vector<PredictedSummary> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record = parse_line(line, source_name, line_no);
    PredictedSummary pred;
    if (!record.contains("group_id") || !record["group_id"].is_number_integer()) {
      throw ParseError(source_name, line_no, "prediction needs an integer 'group_id'");
    }
    pred.group_id = record["group_id"].get<std::int64_t>();
    if (!record.contains("summary") || !record["summary"].is_string()) {
      throw ParseError(source_name, line_no, "prediction needs a 'summary' string");
    }
    pred.summary = record["summary"].get<std::string>();
    out.push_back(std::move(pred));
  }
  return out;
}

std::vector<PredictedSummary> read_predicted_summaries(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_predicted_summaries(in, path.string());
}

std::vector<PredictedTriples> read_predicted_triples(std::istream& in,
                                                     const std::string& source_name) {
  std::vector<PredictedTriples> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record = parse_line(line, source_name, line_no);
    PredictedTriples pred;
    if (!record.contains("group_id") || !record["group_id"].is_number_integer()) {
      throw ParseError(source_name, line_no, "prediction needs an integer 'group_id'");
    }
    pred.group_id = record["group_id"].get<std::int64_t>();
    if (!record.contains("triples") || !record["triples"].is_array()) {
      throw ParseError(source_name, line_no, "prediction needs a 'triples' array");
    }
    for (const json& arr : record["triples"]) {
      pred.triples.push_back(triple_from_array(arr, source_name, line_no));
    }
    out.push_back(std::move(pred));
  }
  return out;
}

std::vector<PredictedTriples> read_predicted_triples(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_predicted_triples(in, path.string());
}

std::vector<std::string> read_log_lines(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace logsum

// logsum: template-mining log triple extraction and summarization toolkit.
//
// Subcommands: parse, extract, summarize, eval (rouge|triples|ratio), bench.
// Exit codes: 0 success, 2 input errors, 3 non-converged ranking (results
// are still written), 4 configuration errors.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "logsum/bench.hpp"
#include "logsum/embedding.hpp"
#include "logsum/errors.hpp"
#include "logsum/io.hpp"
#include "logsum/pipeline.hpp"
#include "logsum/ranking.hpp"
#include "logsum/reference.hpp"
#include "logsum/rouge.hpp"
#include "logsum/template_store.hpp"
#include "logsum/tokenizer.hpp"
#include "logsum/triple_match.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitConfig = 4;

struct PipelineConfig {
  double merge_threshold = 0.6;
  double damping = 0.85;
  double tolerance = 1e-6;
  int max_iterations = 100;
  int top_k = 5;
  double overlap_threshold = 0.5;
  int threads = 1;
  int runs = 30;
};

json config_json(const PipelineConfig& c) {
  return json{{"merge_threshold", c.merge_threshold},
              {"damping", c.damping},
              {"tolerance", c.tolerance},
              {"max_iterations", c.max_iterations},
              {"top_k", c.top_k},
              {"overlap_threshold", c.overlap_threshold},
              {"threads", c.threads},
              {"runs", c.runs}};
}

logsum::RankConfig rank_config(const PipelineConfig& c) {
  logsum::RankConfig rc;
  rc.damping = c.damping;
  rc.tolerance = c.tolerance;
  rc.max_iterations = c.max_iterations;
  rc.top_k = c.top_k;
  return rc;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw logsum::ConfigError("cannot open output file: " + path.string());
  return out;
}

// Runs the pipeline over every line, reporting per-line failures on stderr.
// Returns the number of failed lines.
std::size_t process_lines(logsum::TemplateStore& store, logsum::TripleCache& cache,
                          const std::vector<std::string>& lines,
                          const std::string& source_name, logsum::PipelineStats* stats,
                          std::vector<std::vector<logsum::Triple>>* per_line) {
  std::size_t failures = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      std::vector<logsum::Triple> triples =
          logsum::process_log(store, cache, lines[i], static_cast<std::int64_t>(i), stats);
      if (per_line) (*per_line)[i] = std::move(triples);
    } catch (const logsum::EmptyLog&) {
      std::cerr << source_name << ":" << (i + 1) << ": empty log line\n";
      ++failures;
    }
  }
  return failures;
}

int cmd_parse(const std::string& logs_path, const std::string& templates_path,
              const PipelineConfig& config) {
  const std::vector<std::string> lines = logsum::read_log_lines(logs_path);
  logsum::TemplateStore store(config.merge_threshold);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      store.learn(logsum::tokenize(lines[i]));
    } catch (const logsum::EmptyLog&) {
      std::cerr << logs_path << ":" << (i + 1) << ": empty log line\n";
      ++failures;
    }
  }
  if (store.size() == 0) {
    throw logsum::DegenerateInput("no templates learned: input is empty");
  }
  logsum::save_templates(store, std::filesystem::path(templates_path));
  std::cout << "templates: " << store.size() << "\n";
  return failures > 0 ? kExitInput : kExitOk;
}

int cmd_extract(const std::string& logs_path, const std::string& triples_path,
                const std::optional<std::string>& templates_in,
                const std::optional<std::string>& templates_out,
                const PipelineConfig& config) {
  const std::vector<std::string> lines = logsum::read_log_lines(logs_path);
  logsum::TemplateStore store =
      templates_in ? logsum::load_templates(std::filesystem::path(*templates_in),
                                            config.merge_threshold)
                   : logsum::TemplateStore(config.merge_threshold);
  logsum::TripleCache cache;
  logsum::PipelineStats stats;
  std::vector<std::vector<logsum::Triple>> per_line(lines.size());
  std::size_t failures = 0;

  if (config.threads <= 1) {
    failures = process_lines(store, cache, lines, logs_path, &stats, &per_line);
  } else {
    // Learning mutates the store, so the miss path runs sequentially first;
    // the hit path is read-only and replays in parallel.
    failures = process_lines(store, cache, lines, logs_path, &stats, nullptr);
#if defined(_OPENMP)
#pragma omp parallel num_threads(config.threads)
    {
      logsum::ReplayScratch scratch;
      std::vector<logsum::Triple> out;
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(lines.size()); ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        try {
          if (logsum::replay_cached(store, cache, lines[idx], i, scratch, out)) {
            per_line[idx] = out;
          }
        } catch (const logsum::EmptyLog&) {
          // already reported in the first pass
        }
      }
    }
#else
    logsum::ReplayScratch scratch;
    std::vector<logsum::Triple> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      try {
        if (logsum::replay_cached(store, cache, lines[i], static_cast<std::int64_t>(i),
                                  scratch, out)) {
          per_line[i] = out;
        }
      } catch (const logsum::EmptyLog&) {
      }
    }
#endif
  }

  std::vector<logsum::Triple> flat;
  for (std::vector<logsum::Triple>& chunk : per_line) {
    flat.insert(flat.end(), std::make_move_iterator(chunk.begin()),
                std::make_move_iterator(chunk.end()));
  }
  logsum::write_triples(flat, std::filesystem::path(triples_path));
  if (templates_out) logsum::save_templates(store, std::filesystem::path(*templates_out));

  std::cout << "templates: " << store.size() << ", cache entries: " << cache.size()
            << ", triples: " << flat.size() << "\n";
  std::cout << "cache hits: " << stats.hits << ", misses: " << stats.misses
            << ", hit ratio: " << stats.hit_ratio() << "\n";
  return failures > 0 ? kExitInput : kExitOk;
}

int cmd_summarize(const std::string& logs_path, const std::string& embeddings_path,
                  const std::string& out_path, const std::optional<std::string>& text_path,
                  const std::optional<std::string>& domain_path, const std::string& mode,
                  const PipelineConfig& config) {
  const std::vector<std::string> lines = logsum::read_log_lines(logs_path);
  const logsum::EmbeddingTable table =
      logsum::EmbeddingTable::load(std::filesystem::path(embeddings_path));
  const logsum::RankConfig rc = rank_config(config);

  bool converged = true;
  std::size_t failures = 0;

  if (mode == "logs") {
    std::vector<std::string> usable;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::vector<std::string_view> toks;
      if (logsum::tokenize_views(lines[i], toks) == 0) {
        std::cerr << logs_path << ":" << (i + 1) << ": empty log line\n";
        ++failures;
        continue;
      }
      usable.push_back(lines[i]);
    }
    const logsum::RankedLogSummary summary = logsum::sentence_textrank(usable, table, rc);
    converged = summary.converged;
    std::ofstream out = open_output(out_path);
    logsum::write_log_summary(summary, out);
    if (text_path) {
      std::ofstream text = open_output(*text_path);
      logsum::write_log_summary_text(summary, text);
    }
    std::cout << "logs: " << usable.size() << ", distinct: " << summary.distinct_logs
              << ", ranked: " << summary.entries.size() << ", iterations: "
              << summary.iterations << "\n";
  } else {
    logsum::TemplateStore store(config.merge_threshold);
    logsum::TripleCache cache;
    std::vector<std::vector<logsum::Triple>> per_line(lines.size());
    failures = process_lines(store, cache, lines, logs_path, nullptr, &per_line);

    std::vector<logsum::Triple> triples;
    for (std::vector<logsum::Triple>& chunk : per_line) {
      triples.insert(triples.end(), std::make_move_iterator(chunk.begin()),
                     std::make_move_iterator(chunk.end()));
    }
    if (domain_path) {
      // Domain triples join the candidate pool after the corpus extractions.
      for (logsum::Triple& t : logsum::read_triples(std::filesystem::path(*domain_path))) {
        triples.push_back(std::move(t));
      }
    }

    const logsum::RankedSummary summary = logsum::rank_triples(triples, table, rc);
    converged = summary.converged;
    std::ofstream out = open_output(out_path);
    logsum::write_summary(summary, out);
    if (text_path) {
      std::ofstream text = open_output(*text_path);
      logsum::write_summary_text(summary, text);
    }
    std::cout << "triples: " << triples.size() << ", distinct: " << summary.distinct_triples
              << ", ranked: " << summary.entries.size() << ", iterations: "
              << summary.iterations << "\n";
  }

  if (!converged) {
    std::cerr << "warning: ranking did not converge within the iteration limit\n";
  }
  if (failures > 0) return kExitInput;
  return converged ? kExitOk : kExitNotConverged;
}

struct Aggregate {
  double sum = 0.0;
  std::size_t count = 0;

  void add(double v) {
    sum += v;
    ++count;
  }
  double mean() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
};

template <typename Pred>
const Pred& prediction_for(const std::vector<Pred>& preds, std::int64_t group_id) {
  for (const Pred& p : preds) {
    if (p.group_id == group_id) return p;
  }
  throw logsum::Error("missing prediction for group " + std::to_string(group_id));
}

int cmd_eval(const std::string& metric, const std::string& pred_path,
             const std::string& gold_path, const std::string& report_path,
             const PipelineConfig& config) {
  const std::vector<logsum::GoldGroup> gold =
      logsum::read_gold_groups(std::filesystem::path(gold_path));
  std::ofstream report = open_output(report_path);

  if (metric == "rouge") {
    const std::vector<logsum::PredictedSummary> preds =
        logsum::read_predicted_summaries(std::filesystem::path(pred_path));
    Aggregate p_agg;
    Aggregate r_agg;
    Aggregate f_agg;
    for (const logsum::GoldGroup& group : gold) {
      const logsum::PredictedSummary& pred = prediction_for(preds, group.group_id);
      std::string reference;
      for (const logsum::Triple& t : group.gold_triples) {
        for (const std::string* el : {&t.arg1, &t.relation, &t.arg2}) {
          if (el->empty()) continue;
          if (!reference.empty()) reference += ' ';
          reference += *el;
        }
      }
      const logsum::RougeScore score = logsum::rouge1(pred.summary, reference);
      p_agg.add(score.precision);
      r_agg.add(score.recall);
      f_agg.add(score.f1);
      report << json{{"group_id", group.group_id},
                     {"precision", score.precision},
                     {"recall", score.recall},
                     {"f1", score.f1}}
                    .dump()
             << '\n';
    }
    report << json{{"aggregate", true},
                   {"groups", f_agg.count},
                   {"mean_precision", p_agg.mean()},
                   {"mean_recall", r_agg.mean()},
                   {"mean_f1", f_agg.mean()},
                   {"reference_f1", logsum::kReferenceMeanF1}}
                  .dump()
           << '\n';
    std::cout << "groups: " << f_agg.count << ", mean f1: " << f_agg.mean()
              << " (reference " << logsum::kReferenceMeanF1 << ")\n";
  } else if (metric == "triples") {
    const std::vector<logsum::PredictedTriples> preds =
        logsum::read_predicted_triples(std::filesystem::path(pred_path));
    Aggregate p_agg;
    Aggregate r_agg;
    Aggregate f_agg;
    for (const logsum::GoldGroup& group : gold) {
      const logsum::PredictedTriples& pred = prediction_for(preds, group.group_id);
      const logsum::TripleMatchScore score =
          logsum::score_triples(pred.triples, group.gold_triples, config.overlap_threshold);
      p_agg.add(score.precision);
      r_agg.add(score.recall);
      f_agg.add(score.f1);
      report << json{{"group_id", group.group_id},
                     {"precision", score.precision},
                     {"recall", score.recall},
                     {"f1", score.f1},
                     {"matched", score.matched.size()}}
                    .dump()
             << '\n';
    }
    report << json{{"aggregate", true},
                   {"groups", f_agg.count},
                   {"mean_precision", p_agg.mean()},
                   {"mean_recall", r_agg.mean()},
                   {"mean_f1", f_agg.mean()}}
                  .dump()
           << '\n';
    std::cout << "groups: " << f_agg.count << ", mean f1: " << f_agg.mean() << "\n";
  } else {  // ratio
    const std::vector<logsum::PredictedSummary> preds =
        logsum::read_predicted_summaries(std::filesystem::path(pred_path));
    Aggregate agg;
    for (const logsum::GoldGroup& group : gold) {
      const logsum::PredictedSummary& pred = prediction_for(preds, group.group_id);
      std::string original;
      for (std::size_t i = 0; i < group.logs.size(); ++i) {
        if (i > 0) original += '\n';
        original += group.logs[i];
      }
      const double ratio = logsum::compression_ratio(pred.summary, original);
      agg.add(ratio);
      report << json{{"group_id", group.group_id}, {"ratio", ratio}}.dump() << '\n';
    }
    report << json{{"aggregate", true},
                   {"groups", agg.count},
                   {"mean_ratio", agg.mean()},
                   {"reference_ratio", logsum::kReferenceCompressionRatio}}
                  .dump()
           << '\n';
    std::cout << "groups: " << agg.count << ", mean ratio: " << agg.mean()
              << " (reference " << logsum::kReferenceCompressionRatio << ")\n";
  }
  return kExitOk;
}

int cmd_bench(const std::string& logs_path, const std::optional<std::string>& report_path,
              const PipelineConfig& config) {
  const std::vector<std::string> lines = logsum::read_log_lines(logs_path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<std::string_view> toks;
    if (logsum::tokenize_views(lines[i], toks) == 0) {
      throw logsum::EmptyLog(logs_path + ":" + std::to_string(i + 1) + ": empty log line");
    }
  }

  const logsum::BenchReport report =
      logsum::benchmark_throughput(lines, config.runs, config.merge_threshold);

  std::cout << "logs: " << report.log_count << ", runs: " << report.runs << "\n";
  std::cout << "cold:   " << report.cold_mean << " logs/s (std " << report.cold_std << ")\n";
  std::cout << "cached: " << report.cached_mean << " logs/s (std " << report.cached_std
            << ", reference " << logsum::kReferenceCachedLogsPerSec << ")\n";
  std::cout << "speedup: " << report.speedup << "x\n";

  if (report_path) {
    std::ofstream out = open_output(*report_path);
    out << json{{"log_count", report.log_count},
                {"runs", report.runs},
                {"cold_mean", report.cold_mean},
                {"cold_std", report.cold_std},
                {"cached_mean", report.cached_mean},
                {"cached_std", report.cached_std},
                {"speedup", report.speedup},
                {"reference_cached", logsum::kReferenceCachedLogsPerSec},
                {"reference_cold", logsum::kReferenceColdLogsPerSec}}
               .dump()
        << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"log template mining, triple extraction and summarization"};
  app.require_subcommand(0, 1);

  PipelineConfig config;
  bool print_config = false;
  app.add_flag("--print-config", print_config, "print default configuration as JSON");

  std::string logs_path;
  std::string templates_path;
  std::string triples_path;
  std::string out_path;
  std::string pred_path;
  std::string gold_path;
  std::string report_path;
  std::string mode = "triples";
  std::optional<std::string> templates_in;
  std::optional<std::string> templates_out;
  std::optional<std::string> text_path;
  std::optional<std::string> domain_path;
  std::optional<std::string> bench_report;

  CLI::App* parse = app.add_subcommand("parse", "mine templates from a log file");
  parse->add_option("--logs", logs_path, "input log file, one log per line")->required();
  parse->add_option("--templates", templates_path, "output template store (JSONL)")
      ->required();
  parse->add_option("--merge-threshold", config.merge_threshold,
                    "token agreement needed to generalize a template");

  CLI::App* extract = app.add_subcommand("extract", "extract triples from a log file");
  extract->add_option("--logs", logs_path, "input log file")->required();
  extract->add_option("--triples", triples_path, "output triples (JSONL)")->required();
  extract->add_option("--templates", templates_in, "preload a template store");
  extract->add_option("--save-templates", templates_out, "write the final template store");
  extract->add_option("--merge-threshold", config.merge_threshold,
                      "token agreement needed to generalize a template");
  extract->add_option("--threads", config.threads, "worker threads for the replay phase");

  std::string embeddings_path;
  CLI::App* summarize = app.add_subcommand("summarize", "rank triples into a summary");
  summarize->add_option("--logs", logs_path, "input log file")->required();
  summarize->add_option("--embeddings", embeddings_path, "word2vec text vectors")
      ->required();
  summarize->add_option("--out", out_path, "output summary (JSONL)")->required();
  summarize->add_option("--text", text_path, "also write a plain-text rendering");
  summarize->add_option("--domain-triples", domain_path,
                        "extra domain triples (JSONL) joining the candidate pool");
  summarize->add_option("--mode", mode, "rank 'triples' (default) or whole 'logs'")
      ->check(CLI::IsMember({"triples", "logs"}));
  summarize->add_option("--k", config.top_k, "summary size");
  summarize->add_option("--damping", config.damping, "damping factor");
  summarize->add_option("--tolerance", config.tolerance, "convergence tolerance");
  summarize->add_option("--max-iters", config.max_iterations, "iteration cap");
  summarize->add_option("--merge-threshold", config.merge_threshold,
                        "token agreement needed to generalize a template");

  CLI::App* eval = app.add_subcommand("eval", "score predictions against gold groups");
  eval->require_subcommand(1);
  CLI::App* eval_rouge = eval->add_subcommand("rouge", "unigram overlap of summaries");
  CLI::App* eval_triples = eval->add_subcommand("triples", "one-to-one triple matching");
  CLI::App* eval_ratio = eval->add_subcommand("ratio", "summary compression ratio");
  for (CLI::App* sub : {eval_rouge, eval_triples, eval_ratio}) {
    sub->add_option("--pred", pred_path, "predictions (JSONL)")->required();
    sub->add_option("--gold", gold_path, "gold groups (JSONL)")->required();
    sub->add_option("--report", report_path, "output report (JSONL)")->required();
  }
  eval_triples->add_option("--overlap-threshold", config.overlap_threshold,
                           "per-element token overlap needed for a match");

  CLI::App* bench = app.add_subcommand("bench", "compare cold and cached throughput");
  bench->add_option("--logs", logs_path, "input log file (at least 1000 lines)")->required();
  bench->add_option("--runs", config.runs, "timed repetitions (at least 3)");
  bench->add_option("--merge-threshold", config.merge_threshold,
                    "token agreement needed to generalize a template");
  bench->add_option("--report", bench_report, "write the measurements as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (print_config && app.get_subcommands().empty()) {
      std::cout << config_json(PipelineConfig{}).dump(2) << "\n";
      return kExitOk;
    }
    if (parse->parsed()) return cmd_parse(logs_path, templates_path, config);
    if (extract->parsed()) {
      return cmd_extract(logs_path, triples_path, templates_in, templates_out, config);
    }
    if (summarize->parsed()) {
      return cmd_summarize(logs_path, embeddings_path, out_path, text_path, domain_path,
                           mode, config);
    }
    if (eval->parsed()) {
      const std::string metric = eval_rouge->parsed()   ? "rouge"
                                 : eval_triples->parsed() ? "triples"
                                                          : "ratio";
      return cmd_eval(metric, pred_path, gold_path, report_path, config);
    }
    if (bench->parsed()) return cmd_bench(logs_path, bench_report, config);
    std::cout << app.help();
    return kExitOk;
  } catch (const logsum::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const logsum::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

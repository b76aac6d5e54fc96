#include "analysis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "json.hpp"
#include "sparql/parser.hpp"
#include "util/csv.hpp"
#include "util/errors.hpp"
#include "util/strings.hpp"

namespace kgbench::analysis {

namespace fs = std::filesystem;

namespace {

double pct(int64_t num, int64_t den) {
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

std::string round1(double v) {
  const double r = std::floor(v * 10.0 + 0.5) / 10.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", r);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

std::string format_pct(std::optional<double> p) { return p ? round1(*p) : "--"; }
std::string format_avg(double value) { return round1(value); }

std::vector<PhaseStats> phase_stats(const std::vector<BenchmarkRecord>& records) {
  std::map<int, PhaseStats> by_phase;
  for (const BenchmarkRecord& r : records) {
    PhaseStats& s = by_phase[r.phase];
    s.phase = r.phase;
    ++s.total;
    if (r.parse_ok) ++s.parse_ok;
    if (r.exec_ok) ++s.exec_ok;
    if (r.parse_ok && r.exec_ok && r.empty) ++s.empty;
    s.avg_llm_ms += r.llm_ms;
    s.avg_exec_ms += r.exec_ms;
  }
  std::vector<PhaseStats> out;
  for (auto& [phase, s] : by_phase) {
    s.avg_llm_ms /= static_cast<double>(s.total);
    s.avg_exec_ms /= static_cast<double>(s.total);
    out.push_back(s);
  }
  return out;
}

std::vector<CategoryStats> category_stats(const std::vector<BenchmarkRecord>& records) {
  struct Acc {
    int64_t n = 0;
    uint64_t triples = 0;
    uint64_t filters = 0;
    int64_t agg = 0;
    int64_t executed = 0;
    int64_t empty = 0;
  };
  std::map<Category, Acc> by_cat;
  for (const BenchmarkRecord& r : records) {
    Acc& acc = by_cat[r.category];
    ++acc.n;
    auto parsed = sparql::parse_query(r.sparql);
    if (parsed.ok()) {
      const auto m = sparql::complexity_metrics(*parsed.ast);
      acc.triples += m.triple_count;
      acc.filters += m.filter_count;
      if (m.uses_count || m.uses_order) ++acc.agg;
    }
    if (r.exec_ok) {
      ++acc.executed;
      if (r.empty) ++acc.empty;
    }
  }
  std::vector<CategoryStats> out;
  for (const policy::CategoryInfo& info : policy::category_registry()) {
    const Acc acc = by_cat.count(info.category) ? by_cat[info.category] : Acc{};
    CategoryStats s;
    s.category = info.category;
    s.profile_type = info.profile_type;
    s.n = acc.n;
    if (acc.n > 0) {
      s.avg_triples = static_cast<double>(acc.triples) / static_cast<double>(acc.n);
      s.avg_filters = static_cast<double>(acc.filters) / static_cast<double>(acc.n);
      s.agg_pct = pct(acc.agg, acc.n);
    }
    if (acc.executed > 0) s.empty_pct = pct(acc.empty, acc.executed);
    out.push_back(s);
  }
  return out;
}

std::vector<StrategyStats> strategy_stats(const std::vector<BenchmarkRecord>& records) {
  std::vector<StrategyStats> out;
  for (StrategyTag tag : policy::kAllStrategyTags) {
    StrategyStats s;
    s.tag = tag;
    int64_t parse_ok = 0, exec_ok = 0, executed = 0, empty = 0;
    for (const BenchmarkRecord& r : records) {
      if (!r.strategy_tags.count(tag)) continue;
      ++s.n;
      if (r.parse_ok) ++parse_ok;
      if (r.exec_ok) {
        ++exec_ok;
        ++executed;
        if (r.empty) ++empty;
      }
    }
    if (s.n > 0) {
      s.parse_pct = pct(parse_ok, s.n);
      s.exec_pct = pct(exec_ok, s.n);
      if (executed > 0) s.empty_pct = pct(empty, executed);
    }
    out.push_back(s);
  }
  return out;
}

std::vector<RepairStats> repair_stats(const std::vector<BenchmarkRecord>& records,
                                      const std::map<int, PhaseCandidates>& tallies) {
  std::set<int> phases;
  for (const BenchmarkRecord& r : records) phases.insert(r.phase);
  for (const auto& [phase, _] : tallies) phases.insert(phase);

  std::vector<RepairStats> out;
  for (int phase : phases) {
    RepairStats s;
    s.phase = phase;
    int64_t accepted = 0, valid = 0;
    for (const BenchmarkRecord& r : records) {
      if (r.phase != phase) continue;
      ++accepted;
      if (r.parse_ok && r.exec_ok) ++valid;
    }
    if (accepted > 0) s.post_repair_pct = pct(valid, accepted);
    auto it = tallies.find(phase);
    if (it != tallies.end()) {
      s.repairs = it->second.repairs;
      if (it->second.candidates > 0) {
        s.pre_repair_pct = pct(it->second.first_valid, it->second.candidates);
      }
    } else {
      // no candidate ledger: fall back to the accepted records' own flags
      int64_t pre_valid = 0;
      for (const BenchmarkRecord& r : records) {
        if (r.phase != phase) continue;
        s.repairs += r.repair_attempts;
        if (r.pre_repair_valid) ++pre_valid;
      }
      if (accepted > 0) s.pre_repair_pct = pct(pre_valid, accepted);
    }
    out.push_back(s);
  }
  return out;
}

std::string phase_stats_csv(const std::vector<PhaseStats>& stats) {
  std::string out = "phase,total,parse_ok,exec_ok,empty,avg_llm_ms,avg_exec_ms\n";
  for (const PhaseStats& s : stats) {
    out += util::csv_row({std::to_string(s.phase), std::to_string(s.total),
                          std::to_string(s.parse_ok), std::to_string(s.exec_ok),
                          std::to_string(s.empty), format_avg(s.avg_llm_ms),
                          format_avg(s.avg_exec_ms)});
  }
  return out;
}

std::string category_stats_csv(const std::vector<CategoryStats>& stats) {
  std::string out = "category,n,avg_triples,avg_filters,agg_pct,empty_pct,type\n";
  for (const CategoryStats& s : stats) {
    out += util::csv_row({policy::category_info(s.category).display, std::to_string(s.n),
                          s.n ? format_avg(s.avg_triples) : "--",
                          s.n ? format_avg(s.avg_filters) : "--", s.n ? round1(s.agg_pct) : "--",
                          format_pct(s.empty_pct), std::string(1, s.profile_type)});
  }
  return out;
}

std::string strategy_stats_csv(const std::vector<StrategyStats>& stats) {
  std::string out = "strategy,n,exec_pct,parse_pct,empty_pct\n";
  for (const StrategyStats& s : stats) {
    out += util::csv_row({policy::strategy_tag_text(s.tag), std::to_string(s.n),
                          format_pct(s.exec_pct), format_pct(s.parse_pct), format_pct(s.empty_pct)});
  }
  return out;
}

std::string repair_stats_csv(const std::vector<RepairStats>& stats) {
  std::string out = "phase,pre_repair_pct,repairs,post_repair_pct\n";
  for (const RepairStats& s : stats) {
    out += util::csv_row({std::to_string(s.phase), format_pct(s.pre_repair_pct),
                          std::to_string(s.repairs), format_pct(s.post_repair_pct)});
  }
  return out;
}

std::map<std::string, std::string> figure_data_csv(const std::vector<BenchmarkRecord>& records) {
  std::map<std::string, std::string> files;

  {
    std::string csv = "category,avg_llm_ms,avg_exec_ms,n\n";
    for (const policy::CategoryInfo& info : policy::category_registry()) {
      int64_t n = 0;
      double llm = 0, exec = 0;
      for (const BenchmarkRecord& r : records) {
        if (r.category != info.category) continue;
        ++n;
        llm += r.llm_ms;
        exec += r.exec_ms;
      }
      csv += util::csv_row({info.display, n ? format_avg(llm / static_cast<double>(n)) : "--",
                            n ? format_avg(exec / static_cast<double>(n)) : "--",
                            std::to_string(n)});
    }
    files["latency_by_category.csv"] = csv;
  }

  {
    std::map<int64_t, int64_t> dist;
    for (const BenchmarkRecord& r : records) ++dist[r.answer_count];
    std::string csv = "answer_count,records\n";
    for (const auto& [count, n] : dist) {
      csv += util::csv_row({std::to_string(count), std::to_string(n)});
    }
    files["answer_count_distribution.csv"] = csv;
  }

  {
    // retrieval scores bucketed to 0.05
    std::map<int, int64_t> buckets;
    for (const BenchmarkRecord& r : records) {
      for (double score : r.retrieval_scores) {
        int b = static_cast<int>(std::floor(score * 20.0));
        b = std::clamp(b, 0, 20);
        ++buckets[b];
      }
    }
    auto bound = [](int b) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%.2f", b / 20.0);
      return std::string(buf);
    };
    std::string csv = "score_bucket_low,score_bucket_high,scores\n";
    for (const auto& [b, n] : buckets) {
      csv += util::csv_row({bound(b), bound(b + 1), std::to_string(n)});
    }
    files["retrieval_score_distribution.csv"] = csv;
  }

  {
    std::string csv = "category";
    for (StrategyTag tag : policy::kAllStrategyTags) csv += "," + policy::strategy_tag_text(tag);
    csv += "\n";
    for (const policy::CategoryInfo& info : policy::category_registry()) {
      std::vector<std::string> row = {info.display};
      for (StrategyTag tag : policy::kAllStrategyTags) {
        int64_t n = 0;
        for (const BenchmarkRecord& r : records) {
          if (r.category == info.category && r.strategy_tags.count(tag)) ++n;
        }
        row.push_back(std::to_string(n));
      }
      csv += util::csv_row(row);
    }
    files["strategy_coverage_matrix.csv"] = csv;
  }

  return files;
}

void analyze_run_dir(const std::string& run_dir) {
  const fs::path dir(run_dir);
  const auto records = pipeline::records_from_jsonl_file((dir / "pipeline_records.jsonl").string());

  std::map<int, PhaseCandidates> tallies;
  const fs::path summary_path = dir / "summary.json";
  if (fs::exists(summary_path)) {
    std::ifstream in(summary_path, std::ios::binary);
    try {
      nlohmann::json summary = nlohmann::json::parse(in);
      for (const auto& pj : summary.value("phases", nlohmann::json::array())) {
        PhaseCandidates pc;
        pc.candidates = pj.value("candidates", int64_t{0});
        pc.first_valid = pj.value("first_valid", int64_t{0});
        pc.repairs = pj.value("repairs", int64_t{0});
        if (pc.candidates > 0 || pc.repairs > 0) tallies[pj.value("phase", 0)] = pc;
      }
    } catch (const nlohmann::json::exception&) {
      // tallies stay empty; repair table falls back to record flags
    }
  }

  std::vector<BenchmarkRecord> phase3;
  for (const BenchmarkRecord& r : records) {
    if (r.phase == 3) phase3.push_back(r);
  }
  const std::vector<BenchmarkRecord>& structural = phase3.empty() ? records : phase3;

  fs::create_directories(dir / "tables");
  write_file((dir / "tables" / "table4_phase_stats.csv").string(),
             phase_stats_csv(phase_stats(records)));
  write_file((dir / "tables" / "table5_category_stats.csv").string(),
             category_stats_csv(category_stats(structural)));
  write_file((dir / "tables" / "table6_strategy_stats.csv").string(),
             strategy_stats_csv(strategy_stats(structural)));
  write_file((dir / "tables" / "table8_repair_stats.csv").string(),
             repair_stats_csv(repair_stats(records, tallies)));

  fs::create_directories(dir / "figures_data");
  for (const auto& [name, csv] : figure_data_csv(structural)) {
    write_file((dir / "figures_data" / name).string(), csv);
  }
}

void export_records(const std::string& records_path, const std::string& format,
                    const std::string& out_path) {
  std::vector<BenchmarkRecord> records;
  if (util::ends_with(records_path, ".csv")) {
    records = pipeline::records_from_csv_file(records_path);
  } else {
    records = pipeline::records_from_jsonl_file(records_path);
  }
  if (format == "csv") {
    pipeline::write_records_csv(records, out_path);
  } else if (format == "jsonl") {
    pipeline::write_records_jsonl(records, out_path);
  } else {
    throw ConfigError("unknown export format '" + format + "' (expected csv or jsonl)");
  }
}

}  // namespace kgbench::analysis

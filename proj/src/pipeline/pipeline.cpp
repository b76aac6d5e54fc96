#include "pipeline/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <memory>

#include "analysis/analysis.hpp"
#include "core/ntriples.hpp"
#include "sparql/eval.hpp"
#include "sparql/parser.hpp"
#include "sparql/serialize.hpp"
#include "util/errors.hpp"
#include "util/strings.hpp"

namespace kgbench::pipeline {

namespace fs = std::filesystem;

namespace {

std::string now_stamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string binding_fingerprint(const std::map<std::string, rdf::Term>& binding) {
  std::string fp;
  for (const auto& [slot, term] : binding) {
    fp += slot;
    fp += '=';
    fp += term.ntriples();
    fp += ';';
  }
  return fp;
}

// Paraphrase augmentation hook. The shipping runs keep it off for speed;
// a future provider-backed implementation slots in here without touching
// the acceptance flow.
std::string maybe_paraphrase(const RunConfig& cfg, std::string question) {
  if (!cfg.paraphrase) return question;
  return question;  // no-op placeholder
}

std::map<std::string, std::string> entities_from_values(const sparql::QueryAst& ast) {
  std::map<std::string, std::string> out;
  for (const sparql::ValuesClause& v : ast.values) {
    if (v.terms.size() == 1 && v.terms.front().is_iri()) out[v.var] = v.terms.front().value;
  }
  return out;
}

}  // namespace

RunLogger::RunLogger(std::string path) : path_(std::move(path)) {}

void RunLogger::log(const std::string& event) {
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (out) out << now_stamp() << " " << event << "\n";
}

void RunLogger::warn(const std::string& event) {
  warnings_.push_back(event);
  log("WARN " + event);
}

Pipeline::Pipeline(const rdf::Graph& slice, const rdf::SchemaProfile& profile, RunConfig cfg,
                   llm::ChatProvider& chat, retrieval::EmbeddingProvider& embedder, RunLogger& logger)
    : graph_(slice), profile_(profile), cfg_(std::move(cfg)), chat_(chat), embedder_(embedder),
      log_(logger), bank_(cfg_.dedup_threshold), dedup_(cfg_.dedup_threshold) {}

void Pipeline::adopt_prior(std::vector<BenchmarkRecord> prior_records, retrieval::SeedBank bank) {
  records_ = std::move(prior_records);
  bank_ = std::move(bank);
  for (const BenchmarkRecord& r : records_) {
    dedup_.add(r.question);
    next_id_ = std::max(next_id_, r.id + 1);
  }
}

llm::GenResult Pipeline::generate_with_retry(const llm::Prompt& prompt) {
  llm::GenResult result;
  for (int attempt = 0; attempt < 3; ++attempt) {
    result = chat_.generate(prompt);
    if (result.ok() || !result.retriable) return result;
    log_.log("retrying transport failure: " + *result.error);
  }
  return result;
}

std::vector<TemplateSpec> Pipeline::generate_templates(Category category, uint64_t n) {
  std::vector<TemplateSpec> out;
  std::set<std::string> seen_patterns;
  const std::string cat_id = policy::category_info(category).id;

  auto template_valid = [&](const TemplateSpec& tpl, std::string* reason) {
    for (const std::string& slot : tpl.slot_order()) {
      auto it = tpl.slot_types.find(slot);
      if (it == tpl.slot_types.end()) {
        *reason = "slot {" + slot + "} has no declared kind";
        return false;
      }
    }
    for (const auto& [slot, kind] : tpl.slot_types) {
      if (!profile_.slot_types.count(kind)) {
        *reason = "slot kind '" + kind + "' is not in the profile";
        return false;
      }
    }
    auto parsed = sparql::parse_query(tpl.sparql_skeleton);
    if (!parsed.ok()) {
      *reason = "skeleton parse error: " + parsed.error->to_string();
      return false;
    }
    if (!policy::validate_schema(*parsed.ast, profile_).empty()) {
      *reason = "skeleton violates the schema whitelist";
      return false;
    }
    // every slot must surface as a variable somewhere in the skeleton
    std::set<std::string> vars;
    for (const std::string& v : parsed.ast->bound_variables()) vars.insert(v);
    for (const auto& block : parsed.ast->not_exists) {
      for (const sparql::TriplePattern& p : block) {
        if (p.subject.is_var) vars.insert(p.subject.var);
        if (p.predicate.is_var) vars.insert(p.predicate.var);
        if (p.object.is_var) vars.insert(p.object.var);
      }
    }
    for (const std::string& slot : tpl.slot_order()) {
      if (!vars.count(slot)) {
        *reason = "slot ?" + slot + " never appears in the skeleton";
        return false;
      }
    }
    return true;
  };

  const int max_requests = 3;
  for (int request = 0; request < max_requests && out.size() < n; ++request) {
    llm::Prompt prompt = llm::build_template_prompt(profile_, category, static_cast<int>(n));
    llm::GenResult gen = generate_with_retry(prompt);
    if (!gen.ok()) {
      throw ProviderError("template generation failed for " + cat_id + ": " + *gen.error,
                          gen.retriable);
    }
    std::vector<std::string> block_errors;
    auto blocks = parse_template_blocks(gen.raw_text, category, &block_errors);
    for (const std::string& err : block_errors) {
      log_.log("template-gen " + cat_id + ": dropped block (" + err + ")");
    }
    for (TemplateSpec& tpl : blocks) {
      if (out.size() >= n) break;
      if (!seen_patterns.insert(tpl.nl_pattern).second) continue;
      std::string reason;
      if (!template_valid(tpl, &reason)) {
        log_.log("template-gen " + cat_id + ": dropped template (" + reason + ")");
        continue;
      }
      tpl.id = cat_id + "-t" + std::to_string(out.size() + 1);
      out.push_back(std::move(tpl));
    }
  }
  if (out.size() < n) {
    log_.warn("generation-exhausted: category " + cat_id + " produced " +
              std::to_string(out.size()) + "/" + std::to_string(n) + " templates");
  }
  return out;
}

std::vector<std::map<std::string, rdf::Term>> Pipeline::reverse_query_for_template(
    const TemplateSpec& tpl, std::string* error) {
  if (error) error->clear();
  auto set_error = [&](std::string msg) {
    if (error) *error = std::move(msg);
  };

  auto parsed = sparql::parse_query(tpl.sparql_skeleton);
  if (!parsed.ok()) {
    set_error("skeleton parse error: " + parsed.error->to_string());
    return {};
  }
  sparql::QueryAst ast = std::move(*parsed.ast);
  if (!policy::validate_schema(ast, profile_).empty()) {
    set_error("skeleton schema violation");
    return {};
  }

  // Negated blocks participate positively here so that slots inside
  // NOT EXISTS get grounded in co-occurring entities; instantiation
  // restores the negation.
  for (const auto& block : ast.not_exists) {
    for (const sparql::TriplePattern& p : block) ast.patterns.push_back(p);
  }
  ast.not_exists.clear();
  ast.aggregate.reset();
  ast.order_keys.clear();

  const auto slots = tpl.slot_order();
  if (slots.empty()) {
    sparql::QueryAst probe = ast;
    probe.form = sparql::QueryForm::Ask;
    probe.projection.clear();
    probe.distinct = false;
    probe.limit.reset();
    auto exec = sparql::evaluate(probe, graph_, cfg_.reverse_timeout);
    if (!exec.ok()) {
      set_error(*exec.error);
      return {};
    }
    if (exec.result->boolean) return {std::map<std::string, rdf::Term>{}};
    return {};
  }

  // Slot VALUES pins are removed so slots become free variables.
  std::vector<sparql::ValuesClause> kept;
  for (sparql::ValuesClause& v : ast.values) {
    if (std::find(slots.begin(), slots.end(), v.var) == slots.end()) kept.push_back(std::move(v));
  }
  ast.values = std::move(kept);
  ast.form = sparql::QueryForm::Select;
  ast.projection = slots;
  ast.distinct = true;
  ast.limit = cfg_.reverse_row_cap;

  const auto bound = ast.bound_variables();
  for (const std::string& slot : slots) {
    if (std::find(bound.begin(), bound.end(), slot) == bound.end()) {
      set_error("slot ?" + slot + " is unbound in the skeleton");
      return {};
    }
  }

  auto exec = sparql::evaluate(ast, graph_, cfg_.reverse_timeout);
  if (!exec.ok()) {
    set_error(*exec.error);  // execution-timeout surfaces as a stall signal
    return {};
  }
  std::vector<std::map<std::string, rdf::Term>> bindings;
  for (const auto& row : exec.result->rows) {
    std::map<std::string, rdf::Term> binding;
    for (size_t i = 0; i < slots.size() && i < row.size(); ++i) binding[slots[i]] = row[i];
    bindings.push_back(std::move(binding));
  }
  return bindings;
}

std::optional<Candidate> Pipeline::instantiate(const TemplateSpec& tpl,
                                               const std::map<std::string, rdf::Term>& binding,
                                               std::string* skip_reason) {
  auto skip = [&](std::string reason) {
    if (skip_reason) *skip_reason = std::move(reason);
    return std::nullopt;
  };
  std::set<std::string> iris;
  for (const auto& [slot, term] : binding) {
    if (term.is_iri() && !iris.insert(term.value).second) {
      return skip("duplicate-entity-binding");
    }
  }
  std::map<std::string, std::string> labels;
  for (const auto& [slot, term] : binding) {
    auto label = rdf::label_of(term, graph_, profile_);
    if (!label.label) return skip("unlabeled-entity: " + term.ntriples());
    labels[slot] = *label.label;
  }
  std::string err;
  auto query = render_query(tpl, binding, &err);
  if (!query) return skip(err);

  Candidate cand;
  cand.category = tpl.category;
  cand.template_id = tpl.id;
  cand.question = render_question(tpl, labels);
  cand.sparql_text = query->text;
  return cand;
}

Pipeline::TryResult Pipeline::try_accept(const Candidate& cand, int phase) {
  TryResult out;
  auto parsed = sparql::parse_query(cand.sparql_text);
  if (!parsed.ok()) {
    out.failure = {"parse", parsed.error->to_string()};
    return out;
  }
  sparql::QueryAst ast = std::move(*parsed.ast);

  auto violations = policy::validate_schema(ast, profile_);
  if (!violations.empty()) {
    std::string detail;
    for (const auto& v : violations) detail += (detail.empty() ? "" : "; ") + v.kind + " " + v.detail;
    out.failure = {"schema", detail};
    return out;
  }

  std::vector<std::string> rewrites;
  if (cfg_.enforce_patterns) {
    auto enforced = policy::enforce_category_pattern(ast, cand.category);
    if (!enforced.ok()) {
      out.failure = {"enforce", *enforced.error};
      return out;
    }
    ast = std::move(enforced.ast);
    for (const auto& rw : enforced.rewrites) {
      rewrites.push_back(rw.detail.empty() ? rw.kind : rw.kind + ":" + rw.detail);
    }
  }

  auto exec = sparql::evaluate(ast, graph_, cfg_.reverse_timeout);
  if (!exec.ok()) {
    out.failure = {"exec", *exec.error};
    return out;
  }
  sparql::ResultSet result = std::move(*exec.result);
  // execution-side cap; keeps answer_count <= result_cap with enforcement off
  if (result.kind == sparql::ResultSet::Kind::Rows && !ast.aggregate &&
      result.rows.size() > cfg_.result_cap) {
    result.rows.resize(cfg_.result_cap);
  }

  auto guards = policy::guard_checks(cand.question, ast, cand.category, result,
                                     cand.retrieved_questions, cfg_.dedup_threshold);
  if (!guards.empty()) {
    std::string detail;
    for (const auto& g : guards) detail += (detail.empty() ? "" : "; ") + g.kind;
    out.failure = {"guard", detail};
    return out;
  }

  if (dedup_.is_duplicate(cand.question)) {
    out.failure = {"duplicate", "near-duplicate of an accepted question"};
    return out;
  }

  BenchmarkRecord rec;
  rec.phase = phase;
  rec.category = cand.category;
  rec.template_id = cand.template_id;
  rec.question = cand.question;
  rec.sparql = sparql::serialize(ast);
  rec.parse_ok = true;
  rec.exec_ok = true;
  rec.empty = result.empty();
  rec.answer_count = static_cast<int64_t>(result.answer_count());
  rec.exec_ms = exec.metrics.exec_ms;
  rec.prompt_len = cand.prompt_len;
  rec.question_len = static_cast<int64_t>(cand.question.size());
  rec.retrieval_scores = cand.retrieval_scores;
  rec.strategy_tags = policy::tag_strategies(ast, cand.from_retrieval);
  rec.entities = entities_from_values(ast);
  rec.rewrites = std::move(rewrites);
  out.record = std::move(rec);
  return out;
}

void Pipeline::accept_record(BenchmarkRecord record, int phase) {
  record.id = next_id_++;
  dedup_.add(record.question);
  tallies_[phase - 1].accepted++;
  log_.log("accepted id=" + std::to_string(record.id) + " phase=" + std::to_string(phase) +
           " category=" + policy::category_info(record.category).id +
           (record.empty ? " empty=true" : ""));
  records_.push_back(std::move(record));
}

AcceptOutcome Pipeline::validate_and_repair(Candidate candidate, int phase) {
  PhaseTally& tally = tallies_[phase - 1];
  ++tally.candidates;

  // Pre-repair validity is the first candidate's parse+execute outcome,
  // measured before any policy stage can reroute it.
  bool pre_valid = false;
  {
    auto parsed = sparql::parse_query(candidate.sparql_text);
    if (parsed.ok()) {
      auto exec = sparql::evaluate(*parsed.ast, graph_, cfg_.reverse_timeout);
      pre_valid = exec.ok();
    }
  }
  if (pre_valid) ++tally.first_valid;

  Candidate current = std::move(candidate);
  uint64_t repairs = 0;
  while (true) {
    TryResult attempt = try_accept(current, phase);
    if (attempt.record) {
      BenchmarkRecord rec = std::move(*attempt.record);
      rec.repair_attempts = static_cast<int64_t>(repairs);
      rec.pre_repair_valid = pre_valid;
      rec.llm_ms = current.llm_ms;
      AcceptOutcome outcome;
      outcome.accepted = true;
      accept_record(rec, phase);
      outcome.record = records_.back();
      return outcome;
    }

    const StageFailure& failure = *attempt.failure;
    // A duplicate question is terminal no matter which stage surfaced it
    // (repair never rewrites the question), so it must not burn budget.
    if (failure.stage == "duplicate" || dedup_.is_duplicate(current.question)) {
      ++tally.rejected["duplicate"];
      log_.log("rejected duplicate question in phase " + std::to_string(phase) + ": " +
               current.question);
      return {false, "duplicate", std::nullopt};
    }
    if (repairs >= cfg_.repair_budget) {
      const std::string reason = "irreparable:" + failure.stage;
      ++tally.rejected[reason];
      log_.log("rejected (" + reason + ") after " + std::to_string(repairs) +
               " repairs: " + failure.diagnostic);
      return {false, reason, std::nullopt};
    }

    ++repairs;
    ++tally.repair_invocations;
    log_.log("repair attempt " + std::to_string(repairs) + " (" + failure.stage + "): " +
             failure.diagnostic);
    llm::Prompt prompt = llm::build_repair_prompt(profile_, current.category, current.question,
                                                  current.sparql_text, failure.diagnostic);
    llm::GenResult gen = generate_with_retry(prompt);
    if (!gen.ok()) throw ProviderError("repair generation failed: " + *gen.error, gen.retriable);
    current.llm_ms += gen.llm_ms;
    if (auto pair = llm::extract_pair(gen.raw_text)) {
      current.sparql_text = pair->sparql;
      if (current.question.empty() && !pair->question.empty()) current.question = pair->question;
    } else {
      current.sparql_text = gen.raw_text;
    }
  }
}

void Pipeline::run_phase1() {
  log_.log("phase1 start");
  for (const auto& info : policy::category_registry()) {
    auto templates = generate_templates(info.category, cfg_.templates_per_category);
    uint64_t category_accepted = 0;
    for (const TemplateSpec& tpl : templates) {
      TemplateDiag diag;
      diag.template_id = tpl.id;
      std::set<std::string> consumed;
      uint64_t accepted_t = 0;
      uint64_t stall = 0;
      while (accepted_t < cfg_.seeds_per_template && stall < cfg_.stall_limit) {
        ++diag.cycles;
        std::string reverse_error;
        auto bindings = reverse_query_for_template(tpl, &reverse_error);
        if (!reverse_error.empty() && reverse_error != "execution-timeout") {
          log_.warn("phase1: template " + tpl.id + " rejected (" + reverse_error + ")");
          break;
        }
        bool attempted = false;
        for (const auto& binding : bindings) {
          if (accepted_t >= cfg_.seeds_per_template || stall >= cfg_.stall_limit) break;
          if (!consumed.insert(binding_fingerprint(binding)).second) continue;
          attempted = true;
          ++diag.candidates;
          std::string skip_reason;
          auto cand = instantiate(tpl, binding, &skip_reason);
          if (!cand) {
            ++stall;
            log_.log("phase1: " + tpl.id + " binding skipped (" + skip_reason + ")");
            continue;
          }
          auto outcome = validate_and_repair(std::move(*cand), 1);
          if (outcome.accepted) {
            ++accepted_t;
            ++category_accepted;
            ++diag.accepted;
            stall = 0;
            insert_bank_seed(*outcome.record, 1);
          } else {
            ++stall;
          }
        }
        if (!attempted) ++stall;  // no new bindings this cycle (incl. unsatisfiable)
      }
      diag.aborted_by_stall = stall >= cfg_.stall_limit;
      if (diag.aborted_by_stall) {
        log_.log("phase1: template " + tpl.id + " aborted by stall limit after " +
                 std::to_string(diag.cycles) + " cycles");
      }
      template_diags_.push_back(diag);
    }
    if (category_accepted == 0) {
      log_.warn("phase1: category " + info.id + " yielded zero seeds");
    }
  }
  log_.log("phase1 done: accepted=" + std::to_string(tallies_[0].accepted));
}

void Pipeline::insert_bank_seed(const BenchmarkRecord& record, int origin) {
  retrieval::EmbedResult embedded;
  for (int attempt = 0; attempt < 3; ++attempt) {
    embedded = embedder_.embed(record.question);
    if (embedded.ok() || !embedded.retriable) break;
  }
  if (!embedded.ok()) {
    throw ProviderError("embedding failed for seed question: " + *embedded.error, embedded.retriable);
  }
  retrieval::SeedExample seed;
  seed.record_id = record.id;
  seed.question = record.question;
  seed.sparql = record.sparql;
  seed.category = record.category;
  seed.embedding = std::move(embedded.vec);
  seed.phase_of_origin = origin;
  bank_.insert(std::move(seed));
}

void Pipeline::run_generation_phase(int phase, uint64_t target) {
  const bool serialize_generation = cfg_.parallelism <= 1 || chat_.id() == "mock-chat";
  std::vector<std::string> deficits;

  for (const auto& info : policy::category_registry()) {
    const Category category = info.category;
    uint64_t accepted = 0;
    const uint64_t budget = std::max<uint64_t>(target * 10, 100);
    uint64_t attempts = 0;

    while (accepted < target && attempts < budget) {
      auto ranked = retrieval::top_k(info.example_pattern, category, bank_, cfg_.retrieval_k,
                                     embedder_);
      std::vector<std::pair<std::string, std::string>> exemplars;
      std::vector<double> scores;
      std::vector<std::string> questions;
      for (const auto& [seed, score] : ranked.entries) {
        exemplars.emplace_back(seed->question, seed->sparql);
        scores.push_back(score);
        questions.push_back(seed->question);
      }
      if (ranked.shortage) {
        log_.log("phase" + std::to_string(phase) + ": retrieval shortage for " + info.id + " (" +
                 std::to_string(exemplars.size()) + "/" + std::to_string(cfg_.retrieval_k) + ")");
      }
      llm::Prompt prompt = llm::build_pair_prompt(profile_, category, exemplars);

      const uint64_t batch =
          serialize_generation ? 1 : std::min<uint64_t>(cfg_.parallelism, budget - attempts);
      std::vector<llm::GenResult> results;
      if (batch <= 1) {
        results.push_back(generate_with_retry(prompt));
      } else {
        std::vector<std::future<llm::GenResult>> futures;
        futures.reserve(batch);
        for (uint64_t i = 0; i < batch; ++i) {
          futures.push_back(std::async(std::launch::async,
                                       [this, &prompt] { return generate_with_retry(prompt); }));
        }
        for (auto& f : futures) results.push_back(f.get());
      }

      for (llm::GenResult& gen : results) {
        ++attempts;
        if (!gen.ok()) {
          throw ProviderError("pair generation failed for " + info.id + ": " + *gen.error,
                              gen.retriable);
        }
        Candidate cand;
        cand.category = category;
        cand.from_retrieval = true;
        cand.llm_ms = gen.llm_ms;
        cand.prompt_len = static_cast<int64_t>(prompt.rendered_length());
        cand.retrieval_scores = scores;
        cand.retrieved_questions = questions;
        cand.gen_request_index = gen.request_index;
        if (auto pair = llm::extract_pair(gen.raw_text)) {
          cand.question = maybe_paraphrase(cfg_, pair->question);
          cand.sparql_text = pair->sparql;
        } else {
          log_.log("phase" + std::to_string(phase) + ": extraction failed for " + info.id +
                   "; raw output treated as query text");
          cand.sparql_text = gen.raw_text;
        }
        auto outcome = validate_and_repair(std::move(cand), phase);
        if (outcome.accepted) {
          ++accepted;
          if (phase == 2) insert_bank_seed(*outcome.record, 2);
          if (accepted >= target) break;
        }
      }
    }

    if (accepted < target) {
      const std::string deficit = info.id + "=" + std::to_string(accepted) + "/" +
                                  std::to_string(target);
      if (phase == 2) {
        log_.warn("phase2: acceptance shortfall, partial bank (" + deficit + ")");
      } else {
        deficits.push_back(deficit);
      }
    }
  }

  if (!deficits.empty()) {
    throw BalanceError("phase 3 could not reach category balance: " + util::join(deficits, ", "));
  }
}

void Pipeline::run_phase2() {
  if (bank_.total_size() == 0) {
    throw ConfigError("phase 2 requires a nonempty phase-1 seed pool");
  }
  log_.log("phase2 start");
  run_generation_phase(2, cfg_.phase2_seeds_per_category);
  log_.log("phase2 done: accepted=" + std::to_string(tallies_[1].accepted));
}

void Pipeline::run_phase3() {
  if (bank_.total_size() == 0) {
    throw ConfigError("phase 3 requires seeded retrieval banks");
  }
  log_.log("phase3 start");
  run_generation_phase(3, cfg_.phase3_targets_per_category);
  log_.log("phase3 done: accepted=" + std::to_string(tallies_[2].accepted));
}

void Pipeline::write_outputs(const std::string& run_dir, const std::string& run_id) const {
  fs::create_directories(run_dir);
  write_records_jsonl(records_, (fs::path(run_dir) / "pipeline_records.jsonl").string());

  nlohmann::ordered_json summary;
  summary["run_id"] = run_id;
  summary["seed"] = cfg_.seed;
  summary["config"] = {
      {"templates_per_category", cfg_.templates_per_category},
      {"seeds_per_template", cfg_.seeds_per_template},
      {"phase2_seeds_per_category", cfg_.phase2_seeds_per_category},
      {"phase3_targets_per_category", cfg_.phase3_targets_per_category},
      {"reverse_row_cap", cfg_.reverse_row_cap},
      {"retrieval_k", cfg_.retrieval_k},
      {"result_cap", cfg_.result_cap},
      {"dedup_threshold", cfg_.dedup_threshold},
      {"reverse_timeout_ms", cfg_.reverse_timeout.count()},
      {"stall_limit", cfg_.stall_limit},
      {"repair_budget", cfg_.repair_budget},
      {"enforce_patterns", cfg_.enforce_patterns},
      {"parallelism", cfg_.parallelism},
      {"chat_provider", cfg_.chat.kind},
      {"embedding_provider", cfg_.embedding.kind},
      {"fault_rate", cfg_.chat.fault_rate},
  };

  summary["phases"] = nlohmann::ordered_json::array();
  for (int phase = 1; phase <= 3; ++phase) {
    std::vector<BenchmarkRecord> subset;
    for (const BenchmarkRecord& r : records_) {
      if (r.phase == phase) subset.push_back(r);
    }
    if (!subset.empty()) {
      const std::string base = (fs::path(run_dir) / ("phase" + std::to_string(phase))).string();
      write_records_jsonl(subset, base + ".jsonl");
      write_records_csv(subset, base + ".csv");
    }
    int64_t parse_ok = 0, exec_ok = 0, empty = 0;
    double llm_total = 0, exec_total = 0;
    for (const BenchmarkRecord& r : subset) {
      parse_ok += r.parse_ok;
      exec_ok += r.exec_ok;
      empty += r.empty;
      llm_total += r.llm_ms;
      exec_total += r.exec_ms;
    }
    const PhaseTally& tally = tallies_[phase - 1];
    nlohmann::ordered_json pj;
    pj["phase"] = phase;
    pj["total"] = subset.size();
    pj["parse_ok"] = parse_ok;
    pj["exec_ok"] = exec_ok;
    pj["empty"] = empty;
    pj["avg_llm_ms"] = subset.empty() ? 0.0 : llm_total / static_cast<double>(subset.size());
    pj["avg_exec_ms"] = subset.empty() ? 0.0 : exec_total / static_cast<double>(subset.size());
    pj["candidates"] = tally.candidates;
    pj["first_valid"] = tally.first_valid;
    pj["repairs"] = tally.repair_invocations;
    pj["accepted"] = tally.accepted;
    pj["rejected"] = tally.rejected;
    summary["phases"].push_back(std::move(pj));
  }
  summary["totals"] = {{"records", records_.size()}, {"bank_entries", bank_.total_size()}};
  summary["warnings"] = log_.warnings();

  nlohmann::ordered_json diags = nlohmann::ordered_json::array();
  for (const TemplateDiag& d : template_diags_) {
    diags.push_back({{"template_id", d.template_id},
                     {"cycles", d.cycles},
                     {"candidates", d.candidates},
                     {"accepted", d.accepted},
                     {"aborted_by_stall", d.aborted_by_stall}});
  }
  summary["templates"] = std::move(diags);

  bank_.save_jsonl_dir((fs::path(run_dir) / "seed_banks").string());

  std::ofstream out(fs::path(run_dir) / "summary.json", std::ios::binary);
  if (!out) throw IoError("cannot write summary.json in " + run_dir);
  out << summary.dump(2) << "\n";
}

std::string create_run_dir(const std::string& out_root, const std::string& run_name) {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y%m%dT%H%M%SZ", &tm);
  fs::create_directories(out_root);
  std::string base = run_name + "-" + stamp;
  fs::path dir = fs::path(out_root) / base;
  for (int k = 2; fs::exists(dir); ++k) {
    dir = fs::path(out_root) / (base + "-" + std::to_string(k));
  }
  fs::create_directories(dir);
  return dir.string();
}

std::string run_pipeline(const RunOptions& options) {
  RunConfig cfg = RunConfig::load(options.config_path, options.overrides);
  if (cfg.slice_path.empty()) throw ConfigError("missing config key 'slice'");
  if (options.phase < 0 || options.phase > 3) throw ConfigError("--phase must be 1, 2 or 3");
  if (cfg.review_gate && options.phase == 0) {
    throw ConfigError("review_gate is on: run one phase at a time with --phase and --from");
  }

  auto loaded = rdf::load_ntriples_file(cfg.slice_path);
  const rdf::Graph& slice = loaded.graph;
  const rdf::SchemaProfile& profile = rdf::SchemaProfile::default_profile();

  const std::string run_dir = create_run_dir(options.out_root, options.run_name);
  const std::string run_id = fs::path(run_dir).filename().string();
  RunLogger logger((fs::path(run_dir) / "run.log").string());
  logger.log("run " + run_id + " starting; slice=" + cfg.slice_path + " triples=" +
             std::to_string(slice.size()));
  for (const auto& d : loaded.rejected) {
    logger.warn("slice line " + std::to_string(d.line) + " rejected: " + d.reason);
  }

  std::unique_ptr<llm::ChatProvider> chat;
  if (cfg.chat.kind == "mock") {
    chat = std::make_unique<llm::MockChatProvider>(cfg.seed, cfg.chat.fault_rate,
                                                   llm::MockCatalog::from_graph(slice, profile));
  } else {
    chat = std::make_unique<llm::HttpChatProvider>(cfg.chat.endpoint, cfg.chat.model,
                                                   cfg.chat.timeout);
  }
  std::unique_ptr<retrieval::EmbeddingProvider> embedding;
  if (cfg.embedding.kind == "mock") {
    embedding = std::make_unique<retrieval::MockEmbeddingProvider>(cfg.embedding.dim);
  } else {
    embedding = std::make_unique<retrieval::HttpEmbeddingProvider>(
        cfg.embedding.endpoint, cfg.embedding.model, cfg.embedding.dim, cfg.embedding.timeout);
  }
  retrieval::CachingEmbedder embedder(*embedding, cfg.embedding_cache);

  Pipeline pipeline(slice, profile, cfg, *chat, embedder, logger);

  if (!options.from_dir.empty()) {
    if (options.phase == 0) {
      throw ConfigError("--from requires --phase: resumed runs execute one phase");
    }
    // adopt the phases below the one being run; later phases are being redone
    std::vector<BenchmarkRecord> prior;
    for (int phase = 1; phase < options.phase; ++phase) {
      fs::path p = fs::path(options.from_dir) / ("phase" + std::to_string(phase) + ".jsonl");
      if (fs::exists(p)) {
        auto batch = records_from_jsonl_file(p.string());
        prior.insert(prior.end(), batch.begin(), batch.end());
      }
    }
    auto loaded_bank = retrieval::SeedBank::load_jsonl_dir(
        (fs::path(options.from_dir) / "seed_banks").string(), cfg.dedup_threshold);
    retrieval::SeedBank bank(cfg.dedup_threshold);
    for (const auto& info : policy::category_registry()) {
      for (const auto& seed : loaded_bank.entries(info.category)) {
        if (seed.phase_of_origin < options.phase) bank.insert(seed);
      }
    }
    logger.log("adopted prior run: records=" + std::to_string(prior.size()) +
               " bank=" + std::to_string(bank.total_size()));
    pipeline.adopt_prior(std::move(prior), std::move(bank));
  }

  auto finalize = [&] {
    pipeline.write_outputs(run_dir, run_id);
    analysis::analyze_run_dir(run_dir);
  };

  try {
    if (options.phase == 0) {
      pipeline.run_phase1();
      pipeline.run_phase2();
      pipeline.run_phase3();
    } else if (options.phase == 1) {
      pipeline.run_phase1();
    } else if (options.phase == 2) {
      pipeline.run_phase2();
    } else {
      pipeline.run_phase3();
    }
  } catch (const BalanceError&) {
    finalize();  // partial artifacts are still worth keeping for debugging
    throw;
  }
  finalize();
  logger.log("run " + run_id + " complete: records=" + std::to_string(pipeline.records().size()));
  return run_dir;
}

}  // namespace kgbench::pipeline

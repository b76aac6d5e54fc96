#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/schema.hpp"
#include "llm/prompt.hpp"
#include "pipeline/template_spec.hpp"

namespace kgbench::llm {

struct GenResult {
  std::string raw_text;
  double llm_ms = 0;
  uint64_t request_index = 0;  // provider-wide, assigned at dispatch
  std::optional<std::string> error;
  bool retriable = false;

  bool ok() const { return !error.has_value(); }
};

class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  virtual GenResult generate(const Prompt& prompt) = 0;
  virtual std::string id() const = 0;
  virtual uint64_t requests() const = 0;
};

// Entity labels per slot kind, harvested from the slice; what the mock
// uses to ground generated pairs.
struct MockCatalog {
  struct Entity {
    std::string iri;
    std::string label;
  };
  std::map<std::string, std::vector<Entity>> by_kind;

  static MockCatalog from_graph(const rdf::Graph& graph, const rdf::SchemaProfile& profile);
};

// The built-in question/skeleton library the mock draws from; also the
// template set it returns for template-gen prompts.
const std::map<policy::Category, std::vector<pipeline::TemplateSpec>>& mock_template_library();

enum class FaultKind {
  DropBrace,            // parse failure: unbalanced group
  InjectOptional,       // parse failure: unsupported feature
  AppendUnion,          // parse failure: trailing unsupported keyword
  OffWhitelistPredicate,  // parses, violates the schema whitelist
  Unrepairable,         // corrupt and refuse to repair (budget tests)
  BadTemplateSlot,      // template-gen: one block carries an unknown slot kind
};

// Deterministic chat stand-in: replaying the same request sequence with
// the same seed yields byte-identical outputs. fault_rate injects
// parse-breaking corruptions on pair-gen requests; the matching repair
// request returns the intended pair.
class MockChatProvider : public ChatProvider {
 public:
  MockChatProvider(uint64_t seed, double fault_rate, MockCatalog catalog);

  GenResult generate(const Prompt& prompt) override;
  std::string id() const override { return "mock-chat"; }
  uint64_t requests() const override { return requests_; }

  // transcript
  uint64_t faults_injected() const { return faults_injected_; }
  const std::vector<uint64_t>& fault_request_indices() const { return fault_request_indices_; }

  // test hooks: force a specific fault on the nth pair-gen call (0-based,
  // per provider), or a bad template block on the nth template-gen call
  void script_fault(uint64_t pair_gen_ordinal, FaultKind kind);
  void script_template_fault(uint64_t template_gen_ordinal);

 private:
  struct TemplateCursor {
    uint64_t next_tuple = 0;
    std::vector<std::vector<uint32_t>> slot_perms;  // per slot, permuted entity indices
    std::vector<uint32_t> slot_sizes;
    uint64_t space = 1;
  };

  GenResult respond_templates(const Prompt& prompt);
  GenResult respond_pair(const Prompt& prompt);
  GenResult respond_repair(const Prompt& prompt);
  std::optional<std::pair<std::string, std::string>> next_pair(policy::Category category);
  TemplateCursor& cursor_for(policy::Category category, size_t tpl_idx);
  bool fault_due(uint64_t ordinal) const;

  uint64_t seed_;
  double fault_rate_;
  MockCatalog catalog_;
  uint64_t requests_ = 0;
  uint64_t pair_gen_calls_ = 0;
  uint64_t template_gen_calls_ = 0;
  uint64_t faults_injected_ = 0;
  std::vector<uint64_t> fault_request_indices_;
  std::map<policy::Category, uint64_t> round_robin_;
  std::map<std::pair<policy::Category, size_t>, TemplateCursor> cursors_;
  std::vector<std::pair<std::string, std::string>> repair_stash_;  // corrupted -> good response
  std::map<uint64_t, FaultKind> scripted_faults_;
  std::map<uint64_t, bool> scripted_template_faults_;
};

// Ollama-style chat endpoint: POST {endpoint}/api/chat with
// {model, messages:[{role,content}], stream:false} -> {message:{content}}.
class HttpChatProvider : public ChatProvider {
 public:
  HttpChatProvider(std::string endpoint, std::string model, std::chrono::milliseconds timeout);
  GenResult generate(const Prompt& prompt) override;
  std::string id() const override { return "http:" + model_; }
  uint64_t requests() const override { return requests_; }

 private:
  std::string endpoint_;
  std::string model_;
  std::chrono::milliseconds timeout_;
  uint64_t requests_ = 0;
};

}  // namespace kgbench::llm

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vfg/classify.hpp"

namespace vfg {

struct SuiteConfig {
  std::size_t max_group_order = 16;
  std::vector<std::string> fields{"2", "3", "4", "5"};
  std::uint64_t unit_budget = std::uint64_t{1} << 22;
  std::size_t engel_exhaustive_max = 4096;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  /// Seeded instances per identity family and case.
  std::size_t identity_samples = 8;
  std::vector<std::string> group_files;
  unsigned jobs = 1;
  /// Adds per-case wall time, which makes reports differ between runs.
  bool timings = false;

  /// Throws std::invalid_argument on non-positive budgets or bad fields.
  void validate() const;
  nlohmann::json to_json() const;
};

struct CorpusEntry {
  std::string spec;
  FiniteGroup group;
  FiniteField field;
};

/// Built-in group specs, before the order cap.
std::vector<std::string> builtin_group_specs(std::size_t max_group_order);

/// Built-in groups up to the order cap plus user files, crossed with the
/// fields, sorted by group order, spec and field order.
std::vector<CorpusEntry> build_corpus(const SuiteConfig& config);

struct CaseReport {
  std::string group;
  std::size_t group_order = 0;
  std::string field;
  /// "exhaustive", "sampled" or "skipped".
  std::string tier = "skipped";
  std::optional<std::uint64_t> unit_order;
  /// "enumerated", "formula" or "unknown".
  std::string unit_order_source = "unknown";
  std::optional<Prediction> prediction;
  std::optional<EngelVerdict> engel;
  bool v_class_known = false;
  std::optional<std::size_t> v_class;
  std::vector<CheckOutcome> checks;
  std::optional<double> wall_seconds;

  nlohmann::json to_json() const;
};

/// |V(FG)| from the order law when P is normal (recursing into F[G/P]), or
/// from the summand degrees for abelian non-modular G; nullopt otherwise.
std::optional<std::uint64_t> formula_unit_order(const GroupAlgebra& algebra, const EnumerationBudget& budget);

/// One case; failures inside are recorded as a failed "case" check.
CaseReport run_case(const CorpusEntry& entry, const SuiteConfig& config, unsigned jobs = 1);
std::vector<CaseReport> run_suite(const SuiteConfig& config);

struct Summary {
  std::size_t pass = 0, fail = 0, skipped = 0;
};
Summary summarize(const std::vector<CaseReport>& reports);

nlohmann::json report_document(const std::vector<CaseReport>& reports, const SuiteConfig& config);
/// Pretty-printed report with a trailing newline. Throws std::runtime_error
/// when the file cannot be written.
void write_report(const std::vector<CaseReport>& reports, const SuiteConfig& config, const std::string& path);

}  // namespace vfg

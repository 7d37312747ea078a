#include "vfg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "vfg/parallel.hpp"

namespace vfg {

using nlohmann::json;

void SuiteConfig::validate() const {
  if (max_group_order == 0) throw std::invalid_argument("max group order must be positive");
  if (unit_budget == 0) throw std::invalid_argument("unit budget must be positive");
  if (engel_exhaustive_max == 0) throw std::invalid_argument("exhaustive Engel cap must be positive");
  if (samples == 0) throw std::invalid_argument("sample count must be positive");
  if (jobs == 0) throw std::invalid_argument("job count must be positive");
  if (fields.empty()) throw std::invalid_argument("at least one field is required");
  for (const auto& f : fields) parse_field(f);
}

json SuiteConfig::to_json() const {
  return {{"max_group_order", max_group_order},
          {"fields", fields},
          {"unit_budget", unit_budget},
          {"engel_exhaustive_max", engel_exhaustive_max},
          {"samples", samples},
          {"seed", seed},
          {"identity_samples", identity_samples},
          {"group_files", group_files}};
}

std::vector<std::string> builtin_group_specs(std::size_t max_group_order) {
  std::vector<std::string> specs;
  for (std::size_t n = 1; n <= max_group_order && n <= FiniteGroup::kMaxOrder; ++n) specs.push_back("C" + std::to_string(n));
  for (const char* s : {"C2xC2", "C2xC4", "C2xC2xC2", "S3", "D4", "Q8", "D4xC3", "C2xC3", "SD16"}) specs.emplace_back(s);
  return specs;
}

std::vector<CorpusEntry> build_corpus(const SuiteConfig& config) {
  config.validate();
  std::vector<std::pair<std::string, FiniteGroup>> groups;
  for (const auto& spec : builtin_group_specs(config.max_group_order)) {
    FiniteGroup g = parse_group_spec(spec);
    if (g.order() <= config.max_group_order) groups.emplace_back(spec, std::move(g));
  }
  for (const auto& path : config.group_files) {
    FiniteGroup g = load_cayley_file(path);
    groups.emplace_back(g.name(), std::move(g));
  }
  std::vector<CorpusEntry> corpus;
  for (const auto& [spec, g] : groups) {
    for (const auto& f : config.fields) corpus.push_back({spec, g, parse_field(f)});
  }
  std::stable_sort(corpus.begin(), corpus.end(), [](const CorpusEntry& a, const CorpusEntry& b) {
    if (a.group.order() != b.group.order()) return a.group.order() < b.group.order();
    if (a.spec != b.spec) return a.spec < b.spec;
    return a.field.order() < b.field.order();
  });
  return corpus;
}

std::optional<std::uint64_t> formula_unit_order(const GroupAlgebra& algebra, const EnumerationBudget& budget) {
  const FiniteGroup& g = algebra.group();
  const FiniteField& f = algebra.field();
  const std::uint32_t p = f.characteristic();
  if (g.order() % p == 0) {
    const Subgroup sp = sylow_subgroup(g, p);
    if (!is_normal(sp)) return std::nullopt;
    const Quotient q = quotient(sp);
    const GroupAlgebra alg_q(f, q.group);
    std::optional<std::uint64_t> inner;
    try {
      inner = count_normalized_units(alg_q, budget);
    } catch (const BudgetExceeded&) {
      inner = formula_unit_order(alg_q, budget);
    }
    if (!inner) return std::nullopt;
    return saturating_pow(f.order(), g.order() - q.group.order()) * *inner;
  }
  if (!g.is_abelian()) return std::nullopt;
  std::uint64_t units = 1;
  for (auto d : summand_degrees(Subgroup::whole(g), f)) units *= saturating_pow(f.order(), d) - 1;
  return units / (f.order() - 1);
}

namespace {

json engel_to_json(const EngelVerdict& v) {
  json j = {{"engel", v.engel},
            {"mode", v.mode},
            {"max_depth", v.max_depth},
            {"pairs_tested", v.pairs_tested},
            {"undecided", v.undecided}};
  if (v.mode == "sampled" && v.engel) j["probabilistic"] = true;
  j["witness"] = v.witness ? engel_witness_to_json(*v.witness) : json(nullptr);
  return j;
}

json outcome_to_json(const CheckOutcome& o) {
  json j = {{"name", o.name}, {"status", to_string(o.status)}, {"reason", o.reason}};
  if (o.witness) j["witness"] = *o.witness;
  return j;
}

void append(std::vector<CheckOutcome>& out, std::vector<CheckOutcome> more) {
  for (auto& o : more) out.push_back(std::move(o));
}

}  // namespace

json CaseReport::to_json() const {
  json j = {{"group", group},
            {"group_order", group_order},
            {"field", field},
            {"tier", tier},
            {"unit_order", unit_order ? json(*unit_order) : json(nullptr)},
            {"unit_order_source", unit_order_source},
            {"prediction", prediction ? vfg::to_json(*prediction) : json(nullptr)},
            {"engel", engel ? engel_to_json(*engel) : json(nullptr)},
            {"v_nilpotency_class", v_class ? json(*v_class) : json(nullptr)},
            {"v_nilpotency_decided", v_class_known}};
  json checks_json = json::array();
  for (const auto& c : checks) checks_json.push_back(outcome_to_json(c));
  j["checks"] = std::move(checks_json);
  if (wall_seconds) j["wall_seconds"] = *wall_seconds;
  return j;
}

CaseReport run_case(const CorpusEntry& entry, const SuiteConfig& config, unsigned jobs) {
  const auto start = std::chrono::steady_clock::now();
  CaseReport report;
  report.group = entry.spec;
  report.group_order = entry.group.order();
  report.field = entry.field.spec();
  try {
    const GroupAlgebra algebra(entry.field, entry.group);
    const EnumerationBudget budget{config.unit_budget, config.unit_budget};
    CaseContext ctx{.algebra = algebra,
                    .budget = budget,
                    .table_cap = config.engel_exhaustive_max,
                    .samples = config.samples,
                    .seed = config.seed,
                    .jobs = jobs};

    std::optional<UnitGroup> units;
    if (normalized_point_count(algebra) <= config.unit_budget) {
      ctx.unit_count = count_normalized_units(algebra, budget, jobs);
      report.unit_order = ctx.unit_count;
      report.unit_order_source = "enumerated";
      if (*ctx.unit_count <= config.engel_exhaustive_max) {
        units = enumerate_normalized_units(algebra, budget, config.engel_exhaustive_max, jobs);
      }
    } else {
      report.unit_order = formula_unit_order(algebra, budget);
      report.unit_order_source = report.unit_order ? "formula" : "unknown";
    }

    if (units) {
      report.tier = "exhaustive";
      ctx.units = &*units;
      ctx.engel = engel_group_test(*units, jobs);
      ctx.v_class_known = true;
      ctx.v_class = nilpotency_class_of_V(*units);
    } else {
      report.tier = "sampled";
      ctx.engel = engel_group_test_sampled(algebra, config.samples, config.seed, jobs);
    }
    report.engel = ctx.engel;
    report.v_class_known = ctx.v_class_known;
    report.v_class = ctx.v_class;

    const Prediction prediction = predict_locally_nilpotent(entry.group, entry.field);
    report.prediction = prediction;
    append(report.checks, verify_classification(ctx, prediction));
    report.checks.push_back(verify_order_law(ctx));
    append(report.checks, verify_nilpotent_elements(ctx));
    append(report.checks, verify_structure(ctx));
    append(report.checks, verify_nilpotency_criterion(ctx));
    append(report.checks, verify_p_regular_subgroups(ctx));
    for (const auto& batch : run_identity_checks(algebra, config.identity_samples, config.seed, budget)) {
      report.checks.push_back(batch.outcome());
    }
  } catch (const std::exception& e) {
    report.checks.push_back(failed("case", std::string("case aborted: ") + e.what(), {{"error", e.what()}}));
  }
  if (config.timings) {
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

std::vector<CaseReport> run_suite(const SuiteConfig& config) {
  const auto corpus = build_corpus(config);
  std::vector<CaseReport> reports(corpus.size());
  // Cases run in parallel; each writes only its own slot.
  parallel_chunks(corpus.size(), corpus.size(), config.jobs, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) reports[i] = run_case(corpus[i], config, 1);
    (void)c;
  });
  return reports;
}

Summary summarize(const std::vector<CaseReport>& reports) {
  Summary s;
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      switch (c.status) {
        case CheckStatus::Pass: ++s.pass; break;
        case CheckStatus::Fail: ++s.fail; break;
        case CheckStatus::Skipped: ++s.skipped; break;
      }
    }
  }
  return s;
}

json report_document(const std::vector<CaseReport>& reports, const SuiteConfig& config) {
  const Summary s = summarize(reports);
  json cases = json::array();
  for (const auto& r : reports) cases.push_back(r.to_json());
  return {{"config", config.to_json()},
          {"summary", {{"pass", s.pass}, {"fail", s.fail}, {"skipped", s.skipped}}},
          {"cases", std::move(cases)}};
}

void write_report(const std::vector<CaseReport>& reports, const SuiteConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file '" + path + "'");
  out << report_document(reports, config).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing report file '" + path + "'");
}

}  // namespace vfg

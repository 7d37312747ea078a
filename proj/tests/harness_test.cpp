#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vfg/harness.hpp"

namespace vfg {
namespace {

SuiteConfig small_config() {
  SuiteConfig c;
  c.max_group_order = 6;
  c.fields = {"2"};
  c.samples = 500;
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const CheckOutcome* find(const CaseReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

TEST(Config, Validation) {
  SuiteConfig c;
  EXPECT_NO_THROW(c.validate());
  c.fields = {"6"};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SuiteConfig{};
  c.unit_budget = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SuiteConfig{};
  c.fields.clear();
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SuiteConfig{};
  c.samples = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Corpus, SmallConfig) {
  const auto corpus = build_corpus(small_config());
  auto has = [&](const std::string& g) {
    return std::any_of(corpus.begin(), corpus.end(), [&](const CorpusEntry& e) { return e.spec == g; });
  };
  EXPECT_TRUE(has("C2"));
  EXPECT_TRUE(has("S3"));
  EXPECT_FALSE(has("D4"));
  for (std::size_t i = 1; i < corpus.size(); ++i) {
    const auto& a = corpus[i - 1];
    const auto& b = corpus[i];
    EXPECT_TRUE(std::make_pair(a.group.order(), a.spec) <= std::make_pair(b.group.order(), b.spec));
  }
}

TEST(Corpus, DefaultIncludesSemidihedral) {
  const auto corpus = build_corpus(SuiteConfig{});
  EXPECT_TRUE(std::any_of(corpus.begin(), corpus.end(),
                          [](const CorpusEntry& e) { return e.spec == "SD16" && e.field.order() == 3; }));
  // D4xC3 has order 24, above the default cap.
  EXPECT_FALSE(std::any_of(corpus.begin(), corpus.end(), [](const CorpusEntry& e) { return e.spec == "D4xC3"; }));
  SuiteConfig big;
  big.max_group_order = 24;
  big.fields = {"2"};
  const auto wide = build_corpus(big);
  EXPECT_TRUE(std::any_of(wide.begin(), wide.end(), [](const CorpusEntry& e) { return e.spec == "D4xC3"; }));
}

TEST(Corpus, UserGroupFile) {
  const auto path = (std::filesystem::temp_directory_path() / "vfg_harness_q8.json").string();
  std::ofstream(path) << group_to_json(quaternion8());
  SuiteConfig c = small_config();
  c.group_files = {path};
  const auto corpus = build_corpus(c);
  EXPECT_EQ(corpus.size(), build_corpus(small_config()).size() + 1);

  const auto bad = (std::filesystem::temp_directory_path() / "vfg_harness_bad.json").string();
  std::ofstream(bad) << R"({"n": 2, "table": [[0, 1], [1, 1]]})";
  c.group_files = {bad};
  EXPECT_THROW(build_corpus(c), std::invalid_argument);
  c.group_files = {"/nonexistent/group.json"};
  EXPECT_THROW(build_corpus(c), std::exception);
}

TEST(RunCase, C2OverGf2) {
  const CaseReport r = run_case({"C2", cyclic(2), make_field(2, 1)}, small_config());
  EXPECT_EQ(r.tier, "exhaustive");
  EXPECT_EQ(r.unit_order, std::optional<std::uint64_t>(2));
  ASSERT_TRUE(r.prediction);
  EXPECT_TRUE(r.prediction->locally_nilpotent);
  for (const auto& c : r.checks) EXPECT_NE(c.status, CheckStatus::Fail) << c.name;
}

TEST(RunCase, S3OverGf2HasWitness) {
  const CaseReport r = run_case({"S3", symmetric(3), make_field(2, 1)}, small_config());
  ASSERT_TRUE(r.prediction);
  EXPECT_FALSE(r.prediction->locally_nilpotent);
  ASSERT_TRUE(r.engel && r.engel->witness);
  const nlohmann::json j = r.to_json();
  const auto& w = j.at("engel").at("witness");
  EXPECT_GE(w.at("trace").size(), 2u);
  const GroupAlgebra alg(make_field(2, 1), symmetric(3));
  EXPECT_TRUE(replay_engel_witness(engel_witness_from_json(alg, w)));
}

TEST(RunCase, D4xC3IsSampled) {
  SuiteConfig c = small_config();
  c.samples = 2000;
  const CaseReport r = run_case({"D4xC3", parse_group_spec("D4xC3"), make_field(2, 1)}, c);
  EXPECT_EQ(r.tier, "sampled");
  EXPECT_EQ(r.unit_order_source, "formula");
  EXPECT_EQ(r.unit_order, std::optional<std::uint64_t>((std::uint64_t{1} << 21) * 3));
  for (const char* n : {"order_law", "structure.commutators", "structure.central_sylows", "structure.direct_product", "structure.quotient_units"}) {
    const CheckOutcome* o = find(r, n);
    ASSERT_TRUE(o) << n;
    EXPECT_EQ(o->status, CheckStatus::Pass) << n << ": " << o->reason;
  }
}

TEST(RunCase, NonModularNonAbelianOverBudgetHasUnknownOrder) {
  SuiteConfig c = small_config();
  c.unit_budget = 1000;
  const CaseReport r = run_case({"S3", symmetric(3), make_field(5, 1)}, c);
  EXPECT_EQ(r.tier, "sampled");
  EXPECT_EQ(r.unit_order_source, "unknown");
  EXPECT_FALSE(r.unit_order);
}

TEST(FormulaOrder, MatchesEnumeration) {
  const EnumerationBudget budget;
  for (const char* group : {"C2xC3", "D4", "C6", "C5", "C2xC2", "C12"}) {
    for (const char* field : {"2", "3"}) {
      const GroupAlgebra alg(parse_field(field), parse_group_spec(group));
      const auto f = formula_unit_order(alg, {64, 64});
      if (!alg.group().is_abelian() && alg.group().order() % alg.field().characteristic() != 0) {
        EXPECT_FALSE(f) << group << " " << field;
        continue;
      }
      ASSERT_TRUE(f) << group << " " << field;
      EXPECT_EQ(*f, count_normalized_units(alg, budget)) << group << " " << field;
    }
  }
  EXPECT_FALSE(formula_unit_order(GroupAlgebra(make_field(2, 1), symmetric(3)), budget));
}

TEST(Report, EmptyAndSingle) {
  const SuiteConfig c = small_config();
  const nlohmann::json empty = report_document({}, c);
  EXPECT_TRUE(empty.at("cases").is_array());
  EXPECT_TRUE(empty.at("cases").empty());
  EXPECT_EQ(empty.at("summary").at("pass"), 0);

  CaseReport one;
  one.group = "C1";
  one.checks.push_back(passed("x"));
  const nlohmann::json doc = report_document({one}, c);
  EXPECT_EQ(doc.at("summary").at("pass"), 1);
  EXPECT_EQ(doc.at("summary").at("fail"), 0);
  EXPECT_EQ(doc.at("config").at("fields"), nlohmann::json::array({"2"}));
}

TEST(Report, ByteIdenticalAcrossRunsAndJobs) {
  SuiteConfig c = small_config();
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = (dir / "vfg_report_a.json").string(), b = (dir / "vfg_report_b.json").string();
  write_report(run_suite(c), c, a);
  c.jobs = 3;
  const auto reports = run_suite(c);
  c.jobs = 1;  // the worker count is not part of the report
  write_report(reports, c, b);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_THROW(write_report({}, c, "/nonexistent/dir/report.json"), std::runtime_error);
}

TEST(Report, TimingsOnlyWhenRequested) {
  SuiteConfig c = small_config();
  const CaseReport plain = run_case({"C2", cyclic(2), make_field(2, 1)}, c);
  EXPECT_FALSE(plain.to_json().contains("wall_seconds"));
  c.timings = true;
  const CaseReport timed = run_case({"C2", cyclic(2), make_field(2, 1)}, c);
  EXPECT_TRUE(timed.to_json().contains("wall_seconds"));
}

}  // namespace
}  // namespace vfg

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "vfg/harness.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_case(const vfg::CaseReport& r) {
  std::cout << r.group << " over GF(" << r.field << "), tier " << r.tier << "\n";
  std::cout << "  |V| = " << (r.unit_order ? std::to_string(*r.unit_order) : "?") << " (" << r.unit_order_source
            << ")\n";
  if (r.prediction) {
    std::cout << "  predicted locally nilpotent: " << (r.prediction->locally_nilpotent ? "yes" : "no") << " via "
              << vfg::to_string(r.prediction->rationale) << "\n";
  }
  if (r.engel) {
    std::cout << "  Engel (" << r.engel->mode << "): " << (r.engel->engel ? "yes" : "no")
              << ", max depth " << r.engel->max_depth << ", pairs " << r.engel->pairs_tested << "\n";
    if (r.engel->witness) {
      const auto& w = *r.engel->witness;
      std::cout << "    x = " << vfg::to_string(w.x) << "\n    y = " << vfg::to_string(w.y) << "\n";
      for (std::size_t k = 0; k < w.trace.size(); ++k) {
        std::cout << "    c_" << k << " = " << vfg::to_string(w.trace[k]) << "\n";
      }
      std::cout << "    (c_" << w.trace.size() - 1 << ", y) = c_" << w.cycle_start << "\n";
    }
  }
  if (r.v_class_known) {
    std::cout << "  nilpotency class of V: " << (r.v_class ? std::to_string(*r.v_class) : "none") << "\n";
  }
  for (const auto& c : r.checks) {
    std::cout << "  [" << vfg::to_string(c.status) << "] " << c.name;
    if (!c.reason.empty()) std::cout << ": " << c.reason;
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Engel and nilpotency verification for unit groups of finite group algebras"};
  app.require_subcommand(1);

  vfg::SuiteConfig config;
  std::string fields = "2,3,4,5";
  std::string out_path;
  auto* verify = app.add_subcommand("verify", "Run the corpus and write a JSON report");
  verify->add_option("--max-group-order", config.max_group_order, "Largest built-in group order")->capture_default_str();
  verify->add_option("--fields", fields, "Comma-separated field orders, e.g. 2,3,4,5")->capture_default_str();
  verify->add_option("--unit-budget", config.unit_budget, "Cap on enumerated points q^(|G|-1)")->capture_default_str();
  verify->add_option("--engel-exhaustive-max", config.engel_exhaustive_max, "Largest |V| tested pair by pair")
      ->capture_default_str();
  verify->add_option("--samples", config.samples, "Seeded pairs in the sampled tier")->capture_default_str();
  verify->add_option("--seed", config.seed, "Sampling seed")->capture_default_str();
  verify->add_option("--identity-samples", config.identity_samples, "Identity instances per family and case")
      ->capture_default_str();
  verify->add_option("--group-file", config.group_files, "Extra Cayley-table JSON files");
  verify->add_option("--jobs", config.jobs, "Worker threads")->capture_default_str();
  verify->add_flag("--timings", config.timings, "Record per-case wall time (breaks byte-identical reports)");
  verify->add_option("--out", out_path, "Report path (stdout when omitted)");

  std::string group_spec, field_spec;
  auto* analyze = app.add_subcommand("analyze", "Analyze a single (G, F) case verbosely");
  analyze->add_option("--group", group_spec, "Group spec, e.g. D4xC3")->required();
  analyze->add_option("--field", field_spec, "Field order, e.g. 4 or 2^2")->required();
  analyze->add_option("--unit-budget", config.unit_budget)->capture_default_str();
  analyze->add_option("--engel-exhaustive-max", config.engel_exhaustive_max)->capture_default_str();
  analyze->add_option("--samples", config.samples)->capture_default_str();
  analyze->add_option("--seed", config.seed)->capture_default_str();
  analyze->add_option("--jobs", config.jobs)->capture_default_str();
  bool analyze_json = false;
  analyze->add_flag("--json", analyze_json, "Print the case report as JSON");

  std::string cayley;
  bool validate = false;
  auto* group = app.add_subcommand("group", "Load and validate a Cayley-table file");
  group->add_option("--cayley", cayley, "Cayley-table JSON file")->required();
  group->add_flag("--validate", validate, "Validate only");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      config.fields = split_csv(fields);
      config.validate();
      const auto reports = vfg::run_suite(config);
      if (out_path.empty()) {
        std::cout << vfg::report_document(reports, config).dump(2) << "\n";
      } else {
        vfg::write_report(reports, config, out_path);
      }
      const auto s = vfg::summarize(reports);
      std::cerr << reports.size() << " cases: " << s.pass << " pass, " << s.fail << " fail, " << s.skipped
                << " skipped\n";
      return s.fail == 0 ? 0 : 1;
    }
    if (*analyze) {
      config.validate();
      const vfg::CorpusEntry entry{group_spec, vfg::parse_group_spec(group_spec), vfg::parse_field(field_spec)};
      const auto report = vfg::run_case(entry, config, config.jobs);
      if (analyze_json) {
        std::cout << report.to_json().dump(2) << "\n";
      } else {
        print_case(report);
      }
      return vfg::summarize({report}).fail == 0 ? 0 : 1;
    }
    if (*group) {
      const vfg::FiniteGroup g = vfg::load_cayley_file(cayley);
      std::cout << g.name() << ": valid group of order " << g.order() << (g.is_abelian() ? ", abelian" : "")
                << ", exponent " << g.exponent() << "\n";
      if (!validate) std::cout << vfg::describe(vfg::Subgroup::whole(g)) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

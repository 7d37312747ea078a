#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vfg/unit_group.hpp"

namespace vfg {

enum class CheckStatus { Pass, Fail, Skipped };
std::string to_string(CheckStatus s);

struct CheckOutcome {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  std::string reason;
  std::optional<nlohmann::json> witness;
};

CheckOutcome passed(std::string name, std::string reason = {});
CheckOutcome failed(std::string name, std::string reason, nlohmann::json witness);
CheckOutcome skipped(std::string name, std::string reason);

// Serialization shared by witnesses and reports.
nlohmann::json element_to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const GroupAlgebra& algebra, const nlohmann::json& j);
nlohmann::json engel_witness_to_json(const EngelWitness& w);
EngelWitness engel_witness_from_json(const GroupAlgebra& algebra, const nlohmann::json& j);

enum class Rationale { Modular, CentralTorsion, Mersenne, None };
std::string to_string(Rationale r);

/// Sub-conditions of the Mersenne clause with the torsion part equal to G.
struct MersenneClause {
  bool prime_field = false;
  /// p = 2^t - 1.
  std::optional<unsigned> t;
  std::uint64_t exponent = 0;
  bool exponent_divides = false;
  /// g^-1 a g = a^p for every a in G and g outside C_G(G).
  bool action = false;
  bool torsion_abelian = false;
  bool holds() const { return prime_field && t && exponent_divides && action && torsion_abelian; }
};

struct Prediction {
  bool locally_nilpotent = false;
  Rationale rationale = Rationale::None;
  bool modular = false;
  bool group_nilpotent = false;
  bool derived_p_group = false;
  /// The torsion part (all of G) is a central subgroup, i.e. G is abelian.
  bool torsion_central = false;
  MersenneClause clause_ii;
};

/// Predicted local nilpotency of V(FG) for finite G.
Prediction predict_locally_nilpotent(const FiniteGroup& g, const FiniteField& f);
nlohmann::json to_json(const Prediction& p);

/// Whatever brute force established about one (G, F) case.
struct CaseContext {
  GroupAlgebra algebra;
  EnumerationBudget budget;
  std::size_t table_cap = 4096;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  unsigned jobs = 1;
  /// Exhaustive tier only.
  const UnitGroup* units = nullptr;
  /// Exact |V| when the points were enumerated.
  std::optional<std::uint64_t> unit_count{};
  EngelVerdict engel{};
  /// Nilpotency class of V, decided only in the exhaustive tier.
  bool v_class_known = false;
  std::optional<std::size_t> v_class{};
};

struct NilpotentEvidence {
  bool exists = false;
  /// "enumeration" or "structure".
  std::string method;
  std::optional<AlgebraElement> example;
};
/// Whether FG has a nonzero nilpotent element. Enumerates when q^|G| fits the
/// budget; otherwise FG has one iff it is not a direct sum of fields, i.e.
/// iff p divides |G| or G is non-abelian.
NilpotentEvidence find_nonzero_nilpotent(const GroupAlgebra& algebra, const EnumerationBudget& budget);

std::vector<CheckOutcome> verify_classification(const CaseContext& ctx, const Prediction& prediction);
std::vector<CheckOutcome> verify_p_regular_subgroups(const CaseContext& ctx);
std::vector<CheckOutcome> verify_nilpotent_elements(const CaseContext& ctx);
std::vector<CheckOutcome> verify_structure(const CaseContext& ctx);
std::vector<CheckOutcome> verify_nilpotency_criterion(const CaseContext& ctx);
/// |V(FG)| = q^(|G| - [G:P]) |V(F[G/P])| for normal P; above the enumeration
/// budget, checks unit(v) <=> unit(collapse(v)) on seeded samples.
CheckOutcome verify_order_law(const CaseContext& ctx);

/// (1+x, a, m) = 1 + x(a-1)^m with x = hat(<a>) g (a-1). Skipped when x = 0.
CheckOutcome commutator_power_identity(const GroupAlgebra& algebra, Elem a, Elem g, std::size_t m);
/// (1+eg, a, n) = 1 + eg(b-1)^n with b = g^-1 a^-1 g a. Skipped unless e
/// commutes with a and b, a commutes with b, and ege = 0.
CheckOutcome idempotent_commutator_identity(const AlgebraElement& e, Elem g, Elem a, std::size_t n);
/// (1 + g hat(<c>), h, q) = 1 + hat(<c>)(g^(h^q) - g) with q = p^m. Throws
/// std::invalid_argument unless c is central of order p = char F.
CheckOutcome binomial_collapse_identity(const GroupAlgebra& algebra, Elem c, Elem g, Elem h, std::size_t m);

/// Seeded admissible instances of one identity family.
struct IdentityBatch {
  std::string name;
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::optional<CheckOutcome> first_failure;
  CheckOutcome outcome() const;
};
/// Up to `count` instances of each identity, drawn with the given seed.
std::vector<IdentityBatch> run_identity_checks(const GroupAlgebra& algebra, std::size_t count, std::uint64_t seed,
                                               const EnumerationBudget& budget);

}  // namespace vfg

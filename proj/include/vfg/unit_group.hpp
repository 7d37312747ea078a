#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vfg/group_algebra.hpp"

namespace vfg {

/// The enumerated normalized unit group V(FG). Elements are indexed by their
/// sorted odometer codes, so the identity is always index 0. Groups of order
/// up to the table cap carry a full multiplication table.
class UnitGroup {
 public:
  using Index = std::uint32_t;
  static constexpr Index kIdentity = 0;
  static constexpr std::size_t kMaxTableOrder = 65535;

  /// `codes` must be sorted, closed under the product and contain 0.
  UnitGroup(GroupAlgebra algebra, std::vector<std::uint64_t> codes, std::size_t table_cap = 4096);

  const GroupAlgebra& algebra() const { return algebra_; }
  std::size_t order() const { return codes_.size(); }
  std::uint64_t code(Index i) const { return codes_[i]; }
  std::span<const FieldElement> coeffs(Index i) const { return {coeffs_.data() + i * dim_, dim_}; }
  AlgebraElement element(Index i) const;
  std::optional<Index> index_of(std::span<const FieldElement> a) const;
  Index index_of_checked(const AlgebraElement& a) const;

  bool has_table() const { return !table_.empty(); }
  Index mul(Index i, Index j) const;
  Index inv(Index i) const { return inv_[i]; }
  /// i^-1 j^-1 i j.
  Index commutator(Index i, Index j) const { return mul(mul(inv_[i], inv_[j]), mul(i, j)); }
  Index pow(Index i, std::uint64_t e) const;
  std::size_t element_order(Index i) const;
  bool is_abelian() const;

 private:
  Index lookup_product(Index i, Index j) const;
  void build_table();

  GroupAlgebra algebra_;
  std::size_t dim_;
  std::vector<std::uint64_t> codes_;
  std::vector<FieldElement> coeffs_;
  std::vector<Index> inv_;
  // table_[j * order + i] = i * j, stored by right factor.
  std::vector<std::uint16_t> table_;
};

/// All normalized units. Throws BudgetExceeded past the point or storage budget.
UnitGroup enumerate_normalized_units(const GroupAlgebra& algebra, const EnumerationBudget& budget,
                                     std::size_t table_cap = 4096, unsigned jobs = 1);

/// Smallest subgroup of V containing the generators, as sorted indices.
std::vector<UnitGroup::Index> subgroup_closure(const UnitGroup& v, std::span<const UnitGroup::Index> generators);

/// gamma_1 = V, gamma_{k+1} = <(gamma_k, V)>. Requires a table.
std::vector<std::vector<UnitGroup::Index>> lower_central_series(const UnitGroup& v);
/// Nilpotency class of V, or nullopt when the series stalls above 1.
std::optional<std::size_t> nilpotency_class_of_V(const UnitGroup& v);

/// Invariant factors of an abelian V; throws std::invalid_argument otherwise.
std::vector<std::uint64_t> abelian_invariants(const UnitGroup& v);

/// The sequence c_0 = x, c_{k+1} = (c_k, y) up to the first 1 or repeat.
struct EngelTrace {
  bool holds = false;
  /// First k with c_k = 1 when the identity holds.
  std::size_t depth = 0;
  /// c_0, ..., c_L with all entries distinct; when the identity fails
  /// (c_L, y) = c_{cycle_start}.
  std::vector<UnitGroup::Index> trace;
  std::size_t cycle_start = 0;
};
EngelTrace engel_pair_test(const UnitGroup& v, UnitGroup::Index x, UnitGroup::Index y);

/// Same iteration carried out in the algebra; nullopt after `max_steps`
/// steps without reaching 1 or a repeat.
struct AlgebraEngelTrace {
  bool holds = false;
  std::size_t depth = 0;
  std::vector<AlgebraElement> trace;
  std::size_t cycle_start = 0;
};
std::optional<AlgebraEngelTrace> engel_trace(const AlgebraElement& x, const AlgebraElement& y,
                                             std::size_t max_steps = 4096);

struct EngelWitness {
  AlgebraElement x;
  AlgebraElement y;
  std::vector<AlgebraElement> trace;
  std::size_t cycle_start = 0;
};

/// Recomputes the commutator sequence of the witness from scratch and checks
/// that it matches the recorded 1-free cycle.
bool replay_engel_witness(const EngelWitness& w);

struct EngelVerdict {
  bool engel = true;
  /// "exhaustive" or "sampled".
  std::string mode;
  std::size_t max_depth = 0;
  std::uint64_t pairs_tested = 0;
  /// Sampled pairs whose sequence neither reached 1 nor repeated in time.
  std::uint64_t undecided = 0;
  std::optional<EngelWitness> witness;
};

/// Every ordered pair; the witness is the lexicographically least failing
/// (x, y) by index.
EngelVerdict engel_group_test(const UnitGroup& v, unsigned jobs = 1);

/// Uniform random normalized unit, reproducible from (seed, stream).
AlgebraElement random_normalized_unit(const GroupAlgebra& algebra, std::uint64_t seed, std::uint64_t stream);

/// `count` seeded pairs; stops at the least failing sample index.
EngelVerdict engel_group_test_sampled(const GroupAlgebra& algebra, std::uint64_t count, std::uint64_t seed,
                                      unsigned jobs = 1, std::size_t max_steps = 4096);

/// {u in V : u - 1 in J} with the structural checks made on it.
struct OnePlusIdeal {
  std::vector<UnitGroup::Index> members;
  /// q^dim J, the size of 1 + J when every element is a unit.
  std::uint64_t expected_order = 0;
  bool all_units = false;
  bool subgroup = false;
  bool normal = false;
  /// Largest power of p dividing |V|.
  std::uint64_t p_part = 0;
  bool is_sylow = false;
};
OnePlusIdeal one_plus_ideal_subgroup(const UnitGroup& v, const IdealBasis& ideal);

/// Collapse V(FG) -> V(F[G/N]) checked against its kernel and the order law.
struct ProjectionReport {
  bool onto = false;
  bool kernel_matches = false;
  bool order_law = false;
  std::uint64_t kernel_order = 0;
  std::uint64_t image_order = 0;
  /// Filled when the image is abelian: invariants of V/K by coset hashing
  /// and of V(F[G/N]) by its element orders.
  std::optional<std::vector<std::uint64_t>> quotient_invariants;
  std::optional<std::vector<std::uint64_t>> image_invariants;
  bool invariants_match = true;
  bool ok() const { return onto && kernel_matches && order_law && invariants_match; }
};
ProjectionReport natural_projection_check(const UnitGroup& v, const UnitGroup& image, const Quotient& quotient,
                                          const IdealBasis& kernel_ideal);

}  // namespace vfg

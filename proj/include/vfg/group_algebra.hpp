#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vfg/finite_field.hpp"
#include "vfg/group.hpp"
#include "vfg/linalg.hpp"

namespace vfg {

class AlgebraElement;

/// The group algebra F[G]. A cheap handle; copies share the field, the group
/// and the precomputed index tables.
class GroupAlgebra {
 public:
  GroupAlgebra(FiniteField field, FiniteGroup group);

  const FiniteField& field() const { return d_->field; }
  const FiniteGroup& group() const { return d_->group; }
  std::size_t dimension() const { return d_->group.order(); }
  /// "GF(2)[S3]".
  std::string name() const;

  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement basis(Elem g) const;
  AlgebraElement scalar(FieldElement c) const;
  AlgebraElement from_coeffs(std::vector<FieldElement> coeffs) const;

  /// out = a * b on raw coefficient arrays of length dimension(); out must not
  /// alias a or b.
  void mul_into(const FieldElement* a, const FieldElement* b, FieldElement* out) const;

  /// g * h^-1, row-major; row g of the left-regular matrix of a is
  /// a[left_index(g, h)] over h.
  Elem left_index(Elem g, Elem h) const { return d_->gh_inv[g * dimension() + h]; }

  friend bool operator==(const GroupAlgebra& a, const GroupAlgebra& b) {
    return a.d_ == b.d_ || (a.d_->field == b.d_->field && a.d_->group == b.d_->group);
  }

 private:
  struct Data {
    FiniteField field;
    FiniteGroup group;
    std::vector<std::uint16_t> gh_inv;
  };
  std::shared_ptr<const Data> d_;
};

/// Thrown when an algebra operation mixes elements of different algebras.
class AlgebraMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element of F[G]: one coefficient per group element.
class AlgebraElement {
 public:
  AlgebraElement(GroupAlgebra algebra, std::vector<FieldElement> coeffs);

  const GroupAlgebra& algebra() const { return algebra_; }
  std::span<const FieldElement> coeffs() const { return coeffs_; }
  FieldElement coeff(Elem g) const { return coeffs_[g]; }
  void set_coeff(Elem g, FieldElement c) { coeffs_[g] = c; }
  std::vector<Elem> support() const;
  bool is_zero() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator-(const AlgebraElement& a);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(FieldElement c, const AlgebraElement& a);

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.coeffs_ == b.coeffs_ && a.algebra_ == b.algebra_;
  }

 private:
  GroupAlgebra algebra_;
  std::vector<FieldElement> coeffs_;
};

/// Convolution product; throws AlgebraMismatch across algebras.
AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b);
FieldElement augmentation(const AlgebraElement& a);
AlgebraElement power(const AlgebraElement& a, std::uint64_t e);
/// Matrix of left multiplication by a on the group basis.
Matrix left_regular_matrix(const AlgebraElement& a);
/// Inverse via the left-regular representation; nullopt for non-units.
std::optional<AlgebraElement> try_inverse(const AlgebraElement& a);
bool is_unit(const AlgebraElement& a);
/// a^(2^k) = 0 with 2^k >= dim, which decides nilpotency.
bool is_nilpotent(const AlgebraElement& a);
/// x^-1 y^-1 x y for units; throws std::domain_error otherwise.
AlgebraElement unit_commutator(const AlgebraElement& x, const AlgebraElement& y);

/// Sum of the elements of H with coefficient 1.
AlgebraElement hat(const GroupAlgebra& algebra, const Subgroup& h);

/// Spanning set of an ideal with its reduced row-echelon witness.
class IdealBasis {
 public:
  IdealBasis(GroupAlgebra algebra, std::vector<AlgebraElement> basis);

  const GroupAlgebra& algebra() const { return algebra_; }
  const std::vector<AlgebraElement>& basis() const { return basis_; }
  std::size_t dimension() const { return echelon_.rank(); }
  bool contains(const AlgebraElement& z) const;
  const RowEchelon& echelon() const { return echelon_; }

 private:
  GroupAlgebra algebra_;
  std::vector<AlgebraElement> basis_;
  RowEchelon echelon_;
};

/// Kernel of the coefficient collapse F[G] -> F[G/H], spanned by g - rep(gH).
/// Throws std::invalid_argument when H is not normal.
IdealBasis rel_aug_ideal(const GroupAlgebra& algebra, const Subgroup& h);

/// Coefficient collapse onto F[G/N]; `target` must be F[quotient.group].
AlgebraElement collapse(const AlgebraElement& a, const Quotient& quotient, const GroupAlgebra& target);

/// Image of an element of F[H] under the embedding H -> G.
AlgebraElement embed(const AlgebraElement& a, const SubgroupAsGroup& h, const GroupAlgebra& target);

struct EnumerationBudget {
  std::uint64_t max_points = std::uint64_t{1} << 22;
  std::uint64_t max_unit_group = std::uint64_t{1} << 22;
};

/// Thrown when an enumeration would exceed its budget; callers fall back to
/// the sampled tier.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// base^exp, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);

/// Reusable workspace for repeated unit tests and inversions in one algebra.
class UnitTester {
 public:
  explicit UnitTester(GroupAlgebra algebra);
  bool is_unit(std::span<const FieldElement> a);
  /// Writes a^-1 into out and returns true, or returns false for non-units.
  bool inverse(std::span<const FieldElement> a, std::span<FieldElement> out);

 private:
  GroupAlgebra algebra_;
  std::vector<std::uint16_t> work_;
  std::vector<std::uint64_t> bits_;
};

/// Normalized elements are indexed by the odometer code
/// sum_{g >= 1} value(a_g) q^(g-1); the identity coefficient is fixed last by
/// the augmentation.
std::uint64_t normalized_code(std::span<const FieldElement> a, std::uint32_t q);
std::vector<FieldElement> decode_normalized(std::uint64_t code, const GroupAlgebra& algebra);

/// Number of points q^(|G|-1) in the augmentation-1 hyperplane (saturating).
std::uint64_t normalized_point_count(const GroupAlgebra& algebra);

/// Exact |V(FG)| by testing every augmentation-1 element.
std::uint64_t count_normalized_units(const GroupAlgebra& algebra, const EnumerationBudget& budget,
                                     unsigned jobs = 1);
/// Sorted odometer codes of all normalized units.
std::vector<std::uint64_t> normalized_unit_codes(const GroupAlgebra& algebra, const EnumerationBudget& budget,
                                                 unsigned jobs = 1);

/// Every nonzero nilpotent element, in odometer order with the identity
/// coefficient as the most significant digit. Requires q^|G| <= max_points.
std::vector<AlgebraElement> enumerate_nilpotents(const GroupAlgebra& algebra, const EnumerationBudget& budget,
                                                 unsigned jobs = 1);

struct IdempotentList {
  std::vector<AlgebraElement> elements;
  std::vector<bool> primitive;
  std::size_t primitive_count() const;
  /// "exhaustive" (all of FH) or "frobenius-fixed" (the subalgebra x^q = x).
  std::string search_space;
};

/// Every idempotent of the subalgebra FH (as elements of FG), with primitivity
/// decided relationally within the list. Scans all of FH when q^|H| fits the
/// budget; for abelian H it otherwise scans the Frobenius-fixed subalgebra,
/// which contains every idempotent.
IdempotentList enumerate_idempotents(const GroupAlgebra& algebra, const Subgroup& h, const EnumerationBudget& budget);

/// Number of orbits of d -> d^q on D, the number of simple summands of FD.
/// Throws std::invalid_argument for non-abelian D or gcd(q, |D|) != 1.
std::size_t field_summand_count(const Subgroup& d, const FiniteField& field);
std::size_t field_summand_count(const FiniteGroup& d, const FiniteField& field);
/// Sizes of the orbits of d -> d^q, the degrees of the summand fields over F.
std::vector<std::size_t> summand_degrees(const Subgroup& d, const FiniteField& field);

/// (label, coefficient) pairs with zero terms omitted.
std::vector<std::pair<std::string, std::string>> to_terms(const AlgebraElement& a);
AlgebraElement from_terms(const GroupAlgebra& algebra, const std::vector<std::pair<std::string, std::string>>& terms);
/// "1 + 2*a + x*g2".
std::string to_string(const AlgebraElement& a);

}  // namespace vfg

#pragma once

#include <bitset>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vfg {

/// Index of a group element; the identity is always 0.
using Elem = std::uint32_t;

/// Membership mask over the elements of a group of order at most 256.
using ElementSet = std::bitset<256>;

namespace detail {

struct GroupData {
  std::size_t n = 0;
  std::vector<std::uint16_t> table;  // row-major, table[g * n + h] = gh
  std::vector<Elem> inv;
  std::vector<std::string> labels;
  std::string name;
};

}  // namespace detail

/// Finite group given by a validated Cayley table. Copies share storage.
class FiniteGroup {
 public:
  static constexpr std::size_t kMaxOrder = 256;

  /// Validates the table: identity at index 0, Latin square, associativity.
  /// Throws std::invalid_argument on any violation.
  explicit FiniteGroup(const std::vector<std::vector<Elem>>& table, std::vector<std::string> labels = {},
                       std::string name = {});

  std::size_t order() const { return d_->n; }
  Elem identity() const { return 0; }
  Elem mul(Elem g, Elem h) const { return d_->table[g * d_->n + h]; }
  Elem inv(Elem g) const { return d_->inv[g]; }
  Elem pow(Elem g, std::int64_t e) const;
  /// g^h = h^-1 g h.
  Elem conj(Elem g, Elem h) const { return mul(inv(h), mul(g, h)); }
  std::size_t element_order(Elem g) const;
  bool is_abelian() const;
  std::size_t exponent() const;

  const std::string& label(Elem g) const { return d_->labels[g]; }
  const std::vector<std::string>& labels() const { return d_->labels; }
  std::optional<Elem> find_label(std::string_view label) const;
  const std::string& name() const { return d_->name; }
  FiniteGroup renamed(std::string name) const;

  std::vector<std::vector<Elem>> table() const;
  const std::uint16_t* raw_table() const { return d_->table.data(); }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.d_ == b.d_ || a.d_->table == b.d_->table;
  }

 private:
  std::shared_ptr<const detail::GroupData> d_;
};

/// A subgroup of a parent group, stored as a membership mask.
class Subgroup {
 public:
  Subgroup(FiniteGroup parent, const ElementSet& members);

  static Subgroup trivial(const FiniteGroup& g);
  static Subgroup whole(const FiniteGroup& g);

  const FiniteGroup& parent() const { return parent_; }
  const ElementSet& members() const { return members_; }
  bool contains(Elem g) const { return members_.test(g); }
  std::size_t order() const { return order_; }
  std::vector<Elem> elements() const;
  bool is_trivial() const { return order_ == 1; }
  bool is_subgroup_of(const Subgroup& other) const { return (members_ & ~other.members_).none(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }

 private:
  FiniteGroup parent_;
  ElementSet members_;
  std::size_t order_;
};

/// Numeric order of membership masks read as integers (bit i has weight 2^i).
bool mask_less(const ElementSet& a, const ElementSet& b);

// Constructors. Element indexing is fixed per constructor.
FiniteGroup trivial_group();
/// C_n = <a>, element a^i at index i.
FiniteGroup cyclic(std::size_t n);
/// Dihedral group of order `order` (= 2m): r^i s^j at index i + m*j, s r s = r^-1.
FiniteGroup dihedral(std::size_t order);
/// Q8 = <x, y | x^4, y^2 = x^2, y x y^-1 = x^-1>, x^i y^j at index i + 4j.
FiniteGroup quaternion8();
/// SD16 = <a, b | a^8, b^2, b a b = a^3>, a^i b^j at index i + 8j.
FiniteGroup semidihedral16();
/// C_m x| C_2 with the involution acting by a -> a^t.
FiniteGroup metacyclic(std::size_t m, std::size_t t, std::string name);
/// Sym(n) for n <= 4, permutations in lexicographic order of their images;
/// the product gh applies g first.
FiniteGroup symmetric(std::size_t n);
/// (g, h) at index g * |H| + h.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// Parses "D4xC3", "C8", "Q8", "S3", "SD16", "C2xC2xC2". Dn is dihedral of
/// order 2n. Throws std::invalid_argument on malformed specs.
FiniteGroup parse_group_spec(std::string_view spec);

/// Cayley-table JSON: {"n": N, "table": [[...]], "labels": [...]}.
FiniteGroup group_from_json(std::string_view text, std::string name = "file");
FiniteGroup load_cayley_file(const std::string& path);
std::string group_to_json(const FiniteGroup& g);

/// x^-1 y^-1 x y.
Elem commutator(const FiniteGroup& g, Elem x, Elem y);

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& generators);
Subgroup join(const Subgroup& a, const Subgroup& b);
bool is_closed(const FiniteGroup& g, const ElementSet& set);
bool is_normal(const Subgroup& h);
/// Subgroup generated by all (x, y) with x in a, y in b.
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);
Subgroup derived_subgroup(const FiniteGroup& g);
Subgroup center(const FiniteGroup& g);
Subgroup centralizer(const FiniteGroup& g, const ElementSet& set);
Subgroup normalizer(const Subgroup& h);
bool is_abelian(const Subgroup& h);
bool is_central(const Subgroup& h);

/// Every subgroup exactly once, sorted by order and then by mask.
/// Throws std::length_error when |G| exceeds `max_order`.
std::vector<Subgroup> all_subgroups(const FiniteGroup& g, std::size_t max_order = 64);

std::vector<std::uint32_t> prime_divisors(std::uint64_t n);
/// Largest power of r dividing n.
std::uint64_t prime_part(std::uint64_t n, std::uint32_t r);
bool is_p_group(const Subgroup& h, std::uint32_t p);

/// A Sylow r-subgroup: the set of r-elements when it is a subgroup, otherwise
/// the one with the least mask.
Subgroup sylow_subgroup(const FiniteGroup& g, std::uint32_t r);

/// gamma_1 = G, gamma_{k+1} = (gamma_k, G), up to the first repeat.
std::vector<Subgroup> lower_central_series(const FiniteGroup& g);
/// Length of the lower central series, or nullopt when it stalls above 1.
std::optional<std::size_t> nilpotency_class(const FiniteGroup& g);

struct PComplement {
  Subgroup sylow;
  Subgroup complement;
};
/// (Syl_p(G), A) when G = Syl_p(G) x A with A central of p'-order.
std::optional<PComplement> central_p_complement(const FiniteGroup& g, std::uint32_t p);

/// Invariant factors d_1 | d_2 | ... of an abelian group, from the multiset of
/// its element orders. The trivial group gives an empty list.
std::vector<std::uint64_t> abelian_invariants_from_orders(const std::vector<std::uint64_t>& orders);
std::vector<std::uint64_t> abelian_invariants(const Subgroup& a);
std::vector<std::uint64_t> abelian_invariants(const FiniteGroup& a);

/// G/N with cosets indexed by their least element; coset_of[g] is the index
/// of gN in `group`.
struct Quotient {
  FiniteGroup group;
  std::vector<Elem> coset_of;
  std::vector<Elem> representatives;
};
Quotient quotient(const Subgroup& normal);

/// A subgroup as a group in its own right; embedding[i] is the parent index.
struct SubgroupAsGroup {
  FiniteGroup group;
  std::vector<Elem> embedding;
};
SubgroupAsGroup as_group(const Subgroup& h, std::string name = {});

/// Relabels G by the permutation perm (new index perm[g] for old g, perm[0] = 0).
FiniteGroup relabel(const FiniteGroup& g, const std::vector<Elem>& perm);

std::string describe(const Subgroup& h);

}  // namespace vfg

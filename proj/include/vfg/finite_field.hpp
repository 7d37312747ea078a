#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vfg {

/// Element of GF(p^k) in the polynomial basis. The coefficient vector
/// (c_0, ..., c_{k-1}) is packed as the integer sum c_i p^i, which is also
/// the element's position in the field's canonical enumeration order.
class FieldElement {
 public:
  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint16_t packed) : packed_(packed) {}

  constexpr std::uint16_t value() const { return packed_; }
  constexpr bool is_zero() const { return packed_ == 0; }

  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;

 private:
  std::uint16_t packed_ = 0;
};

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // low to high, monic, size k + 1
  // Operation tables, present when q <= kTableLimit.
  std::vector<std::uint16_t> add;
  std::vector<std::uint16_t> mul;
  std::vector<std::uint16_t> neg;
  std::vector<std::uint16_t> inv;
};

}  // namespace detail

/// GF(p^k), immutable after construction. Copies share the same tables.
class FiniteField {
 public:
  static constexpr std::uint32_t kDefaultMaxOrder = 1u << 16;
  static constexpr std::uint32_t kTableLimit = 256;

  std::uint32_t characteristic() const { return d_->p; }
  std::uint32_t degree() const { return d_->k; }
  std::uint32_t order() const { return d_->q; }
  bool is_prime_field() const { return d_->k == 1; }
  /// Monic modulus, coefficients from the constant term up.
  const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }

  FieldElement zero() const { return FieldElement{}; }
  FieldElement one() const { return FieldElement{1}; }
  /// The element at position `index` of the canonical order 0, 1, ..., q-1.
  FieldElement element(std::uint32_t index) const;
  std::vector<FieldElement> elements() const;
  /// Image of an integer in the prime subfield.
  FieldElement from_int(std::int64_t n) const;

  std::vector<std::uint32_t> coeffs(FieldElement a) const;
  FieldElement from_coeffs(std::span<const std::uint32_t> c) const;

  FieldElement add(FieldElement a, FieldElement b) const {
    if (!d_->add.empty()) return FieldElement{d_->add[a.value() * d_->q + b.value()]};
    return add_slow(a, b);
  }
  FieldElement neg(FieldElement a) const {
    if (!d_->neg.empty()) return FieldElement{d_->neg[a.value()]};
    return neg_slow(a);
  }
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement mul(FieldElement a, FieldElement b) const {
    if (!d_->mul.empty()) return FieldElement{d_->mul[a.value() * d_->q + b.value()]};
    return mul_slow(a, b);
  }
  /// Inverse as a^(q-2). Throws std::domain_error on zero.
  FieldElement inv(FieldElement a) const;
  /// Inverse by the extended Euclidean algorithm on polynomials.
  FieldElement inv_euclid(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  FieldElement frobenius(FieldElement a) const { return pow(a, d_->p); }

  /// Raw tables for hot loops; empty when q exceeds kTableLimit.
  const std::vector<std::uint16_t>& add_table() const { return d_->add; }
  const std::vector<std::uint16_t>& mul_table() const { return d_->mul; }
  const std::vector<std::uint16_t>& neg_table() const { return d_->neg; }
  const std::vector<std::uint16_t>& inv_table() const { return d_->inv; }

  /// Decimal residue for prime fields, polynomial in x otherwise ("x^2+2").
  std::string to_string(FieldElement a) const;
  FieldElement parse(std::string_view text) const;
  /// "GF(4)".
  std::string name() const;
  /// "4", the configuration spelling.
  std::string spec() const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.d_ == b.d_ || (a.d_->p == b.d_->p && a.d_->modulus == b.d_->modulus);
  }

 private:
  friend FiniteField make_field(std::uint32_t, std::uint32_t, std::uint32_t);
  explicit FiniteField(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}

  FieldElement add_slow(FieldElement a, FieldElement b) const;
  FieldElement neg_slow(FieldElement a) const;
  FieldElement mul_slow(FieldElement a, FieldElement b) const;

  std::shared_ptr<const detail::FieldData> d_;
};

bool is_prime(std::uint64_t n);
/// (p, k) with q = p^k, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

/// GF(p^k) with the least monic irreducible modulus of degree k. Candidates
/// x^k + c_{k-1}x^{k-1} + ... + c_0 are ordered by the packed value
/// sum c_i p^i. Throws std::invalid_argument on non-prime p, k = 0, or
/// p^k > max_order.
FiniteField make_field(std::uint32_t p, std::uint32_t k,
                       std::uint32_t max_order = FiniteField::kDefaultMaxOrder);

/// Parses a field order such as "4" or "2^2".
FiniteField parse_field(std::string_view spec,
                        std::uint32_t max_order = FiniteField::kDefaultMaxOrder);

/// Trial division by every monic polynomial of degree 1..deg/2 over GF(p).
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);

}  // namespace vfg

#include "vfg/group_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "vfg/parallel.hpp"

namespace vfg {

namespace {

void check_same(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.algebra() == b.algebra())) {
    throw AlgebraMismatch("mismatched algebras: " + a.algebra().name() + " vs " + b.algebra().name());
  }
}

// Gaussian elimination on a uint16 matrix through the field's tables.
// With `jordan` the system is fully reduced and pivots normalised to 1.
// Returns false as soon as a pivot column is missing.
bool eliminate(std::uint16_t* m, std::size_t n, std::size_t cols, const FiniteField& f, bool jordan) {
  const std::uint32_t q = f.order();
  const std::uint16_t* add = f.add_table().data();
  const std::uint16_t* mul = f.mul_table().data();
  const std::uint16_t* neg = f.neg_table().data();
  const std::uint16_t* inv = f.inv_table().data();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot * cols + c] == 0) ++pivot;
    if (pivot == n) return false;
    if (pivot != c) std::swap_ranges(m + pivot * cols + c, m + pivot * cols + cols, m + c * cols + c);
    std::uint16_t* prow = m + c * cols;
    const std::uint16_t pinv = inv[prow[c]];
    if (jordan && prow[c] != 1) {
      const std::uint16_t* scale = mul + pinv * q;
      for (std::size_t k = c; k < cols; ++k) prow[k] = scale[prow[k]];
    }
    for (std::size_t i = jordan ? 0 : c + 1; i < n; ++i) {
      std::uint16_t* row = m + i * cols;
      if (i == c || row[c] == 0) continue;
      const std::uint16_t factor = neg[jordan ? row[c] : mul[row[c] * q + pinv]];
      const std::uint16_t* fm = mul + factor * q;
      for (std::size_t k = c; k < cols; ++k) {
        if (prow[k] != 0) row[k] = add[row[k] * q + fm[prow[k]]];
      }
    }
  }
  return true;
}

std::uint64_t ipow_checked(std::uint64_t base, std::uint64_t exp) { return saturating_pow(base, exp); }

}  // namespace

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

GroupAlgebra::GroupAlgebra(FiniteField field, FiniteGroup group) {
  auto d = std::make_shared<Data>(Data{std::move(field), std::move(group), {}});
  const std::size_t n = d->group.order();
  d->gh_inv.resize(n * n);
  for (Elem g = 0; g < n; ++g) {
    for (Elem h = 0; h < n; ++h) d->gh_inv[g * n + h] = static_cast<std::uint16_t>(d->group.mul(g, d->group.inv(h)));
  }
  d_ = std::move(d);
}

std::string GroupAlgebra::name() const {
  return field().name() + "[" + (group().name().empty() ? "G" : group().name()) + "]";
}

AlgebraElement GroupAlgebra::zero() const { return AlgebraElement(*this, std::vector<FieldElement>(dimension())); }

AlgebraElement GroupAlgebra::one() const { return basis(0); }

AlgebraElement GroupAlgebra::basis(Elem g) const {
  if (g >= dimension()) throw std::out_of_range("group element out of range");
  std::vector<FieldElement> c(dimension());
  c[g] = field().one();
  return AlgebraElement(*this, std::move(c));
}

AlgebraElement GroupAlgebra::scalar(FieldElement s) const {
  std::vector<FieldElement> c(dimension());
  c[0] = s;
  return AlgebraElement(*this, std::move(c));
}

AlgebraElement GroupAlgebra::from_coeffs(std::vector<FieldElement> coeffs) const {
  return AlgebraElement(*this, std::move(coeffs));
}

void GroupAlgebra::mul_into(const FieldElement* a, const FieldElement* b, FieldElement* out) const {
  const std::size_t n = dimension();
  const FiniteField& f = field();
  const std::uint16_t* table = group().raw_table();
  if (f.is_prime_field() && f.order() <= 256) {
    // Accumulate exact integer products, reduce once.
    std::uint32_t acc[FiniteGroup::kMaxOrder] = {};
    for (std::size_t u = 0; u < n; ++u) {
      const std::uint32_t au = a[u].value();
      if (au == 0) continue;
      const std::uint16_t* row = table + u * n;
      for (std::size_t v = 0; v < n; ++v) acc[row[v]] += au * b[v].value();
    }
    const std::uint32_t p = f.characteristic();
    for (std::size_t g = 0; g < n; ++g) out[g] = FieldElement(static_cast<std::uint16_t>(acc[g] % p));
    return;
  }
  std::fill(out, out + n, FieldElement{});
  for (std::size_t u = 0; u < n; ++u) {
    if (a[u].is_zero()) continue;
    const std::uint16_t* row = table + u * n;
    for (std::size_t v = 0; v < n; ++v) {
      if (b[v].is_zero()) continue;
      out[row[v]] = f.add(out[row[v]], f.mul(a[u], b[v]));
    }
  }
}

AlgebraElement::AlgebraElement(GroupAlgebra algebra, std::vector<FieldElement> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != algebra_.dimension()) {
    throw std::invalid_argument("coefficient vector length does not match the group order");
  }
  for (auto c : coeffs_) {
    if (c.value() >= algebra_.field().order()) throw std::invalid_argument("coefficient outside the field");
  }
}

std::vector<Elem> AlgebraElement::support() const {
  std::vector<Elem> s;
  for (std::size_t g = 0; g < coeffs_.size(); ++g) {
    if (!coeffs_[g].is_zero()) s.push_back(static_cast<Elem>(g));
  }
  return s;
}

bool AlgebraElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](FieldElement c) { return c.is_zero(); });
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  check_same(*this, o);
  const FiniteField& f = algebra_.field();
  for (std::size_t g = 0; g < coeffs_.size(); ++g) coeffs_[g] = f.add(coeffs_[g], o.coeffs_[g]);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  check_same(*this, o);
  const FiniteField& f = algebra_.field();
  for (std::size_t g = 0; g < coeffs_.size(); ++g) coeffs_[g] = f.sub(coeffs_[g], o.coeffs_[g]);
  return *this;
}

AlgebraElement operator-(const AlgebraElement& a) {
  AlgebraElement out = a;
  const FiniteField& f = a.algebra().field();
  for (auto& c : out.coeffs_) c = f.neg(c);
  return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  check_same(a, b);
  std::vector<FieldElement> out(a.coeffs_.size());
  a.algebra_.mul_into(a.coeffs_.data(), b.coeffs_.data(), out.data());
  return AlgebraElement(a.algebra_, std::move(out));
}

AlgebraElement operator*(FieldElement c, const AlgebraElement& a) {
  AlgebraElement out = a;
  const FiniteField& f = a.algebra().field();
  for (auto& x : out.coeffs_) x = f.mul(c, x);
  return out;
}

AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

FieldElement augmentation(const AlgebraElement& a) {
  const FiniteField& f = a.algebra().field();
  FieldElement s;
  for (auto c : a.coeffs()) s = f.add(s, c);
  return s;
}

AlgebraElement power(const AlgebraElement& a, std::uint64_t e) {
  AlgebraElement result = a.algebra().one();
  AlgebraElement base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Matrix left_regular_matrix(const AlgebraElement& a) {
  const GroupAlgebra& alg = a.algebra();
  const std::size_t n = alg.dimension();
  Matrix m(alg.field(), n, n);
  for (Elem g = 0; g < n; ++g) {
    for (Elem h = 0; h < n; ++h) m(g, h) = a.coeff(alg.left_index(g, h));
  }
  return m;
}

std::optional<AlgebraElement> try_inverse(const AlgebraElement& a) {
  UnitTester tester(a.algebra());
  std::vector<FieldElement> out(a.algebra().dimension());
  if (!tester.inverse(a.coeffs(), out)) return std::nullopt;
  return AlgebraElement(a.algebra(), std::move(out));
}

bool is_unit(const AlgebraElement& a) {
  UnitTester tester(a.algebra());
  return tester.is_unit(a.coeffs());
}

bool is_nilpotent(const AlgebraElement& a) {
  AlgebraElement x = a;
  for (std::size_t reach = 1; reach < a.algebra().dimension(); reach *= 2) {
    if (x.is_zero()) return true;
    x = x * x;
  }
  return x.is_zero();
}

AlgebraElement unit_commutator(const AlgebraElement& x, const AlgebraElement& y) {
  auto xi = try_inverse(x);
  auto yi = try_inverse(y);
  if (!xi || !yi) throw std::domain_error("commutator of non-units");
  return (*xi * *yi) * (x * y);
}

AlgebraElement hat(const GroupAlgebra& algebra, const Subgroup& h) {
  if (!(h.parent() == algebra.group())) throw AlgebraMismatch("subgroup of a different group");
  AlgebraElement out = algebra.zero();
  for (Elem g : h.elements()) out.set_coeff(g, algebra.field().one());
  return out;
}

IdealBasis::IdealBasis(GroupAlgebra algebra, std::vector<AlgebraElement> basis)
    : algebra_(algebra), basis_(std::move(basis)), echelon_(algebra.field(), algebra.dimension()) {
  for (const auto& b : basis_) {
    check_same(b, algebra_.zero());
    echelon_.insert(b.coeffs());
  }
}

bool IdealBasis::contains(const AlgebraElement& z) const {
  check_same(z, algebra_.zero());
  return echelon_.contains(z.coeffs());
}

IdealBasis rel_aug_ideal(const GroupAlgebra& algebra, const Subgroup& h) {
  if (!(h.parent() == algebra.group())) throw AlgebraMismatch("subgroup of a different group");
  if (!is_normal(h)) throw std::invalid_argument("relative augmentation ideal needs a normal subgroup");
  const Quotient q = quotient(h);
  std::vector<AlgebraElement> basis;
  const FiniteField& f = algebra.field();
  for (Elem g = 0; g < algebra.dimension(); ++g) {
    const Elem rep = q.representatives[q.coset_of[g]];
    if (rep == g) continue;
    AlgebraElement b = algebra.zero();
    b.set_coeff(g, f.one());
    b.set_coeff(rep, f.neg(f.one()));
    basis.push_back(std::move(b));
  }
  return IdealBasis(algebra, std::move(basis));
}

AlgebraElement collapse(const AlgebraElement& a, const Quotient& quotient, const GroupAlgebra& target) {
  if (!(target.group() == quotient.group) || !(target.field() == a.algebra().field())) {
    throw AlgebraMismatch("collapse target is not F[G/N]");
  }
  const FiniteField& f = target.field();
  AlgebraElement out = target.zero();
  for (Elem g = 0; g < a.algebra().dimension(); ++g) {
    const Elem c = quotient.coset_of[g];
    out.set_coeff(c, f.add(out.coeff(c), a.coeff(g)));
  }
  return out;
}

AlgebraElement embed(const AlgebraElement& a, const SubgroupAsGroup& h, const GroupAlgebra& target) {
  if (!(a.algebra().group() == h.group) || !(a.algebra().field() == target.field())) {
    throw AlgebraMismatch("embed source is not F[H]");
  }
  AlgebraElement out = target.zero();
  for (Elem i = 0; i < h.embedding.size(); ++i) out.set_coeff(h.embedding[i], a.coeff(i));
  return out;
}

UnitTester::UnitTester(GroupAlgebra algebra) : algebra_(std::move(algebra)) {
  const std::size_t n = algebra_.dimension();
  work_.resize(n * (n + 1));
  bits_.resize(n);
}

bool UnitTester::is_unit(std::span<const FieldElement> a) {
  const std::size_t n = algebra_.dimension();
  const FiniteField& f = algebra_.field();
  if (f.order() == 2 && n <= 64) {
    for (std::size_t g = 0; g < n; ++g) {
      std::uint64_t row = 0;
      for (std::size_t h = 0; h < n; ++h) row |= std::uint64_t{a[algebra_.left_index(static_cast<Elem>(g), static_cast<Elem>(h))].value()} << h;
      bits_[g] = row;
    }
    for (std::size_t c = 0; c < n; ++c) {
      const std::uint64_t bit = std::uint64_t{1} << c;
      std::size_t pivot = c;
      while (pivot < n && !(bits_[pivot] & bit)) ++pivot;
      if (pivot == n) return false;
      std::swap(bits_[pivot], bits_[c]);
      for (std::size_t i = c + 1; i < n; ++i) {
        if (bits_[i] & bit) bits_[i] ^= bits_[c];
      }
    }
    return true;
  }
  if (!f.mul_table().empty()) {
    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t h = 0; h < n; ++h) work_[g * n + h] = a[algebra_.left_index(static_cast<Elem>(g), static_cast<Elem>(h))].value();
    }
    return eliminate(work_.data(), n, n, f, false);
  }
  return rank(left_regular_matrix(AlgebraElement(algebra_, {a.begin(), a.end()}))) == n;
}

bool UnitTester::inverse(std::span<const FieldElement> a, std::span<FieldElement> out) {
  const std::size_t n = algebra_.dimension();
  const FiniteField& f = algebra_.field();
  if (f.order() == 2 && n < 64) {
    // Augmented column n holds the right-hand side e_1.
    for (std::size_t g = 0; g < n; ++g) {
      std::uint64_t row = 0;
      for (std::size_t h = 0; h < n; ++h) row |= std::uint64_t{a[algebra_.left_index(static_cast<Elem>(g), static_cast<Elem>(h))].value()} << h;
      if (g == 0) row |= std::uint64_t{1} << n;
      bits_[g] = row;
    }
    for (std::size_t c = 0; c < n; ++c) {
      const std::uint64_t bit = std::uint64_t{1} << c;
      std::size_t pivot = c;
      while (pivot < n && !(bits_[pivot] & bit)) ++pivot;
      if (pivot == n) return false;
      std::swap(bits_[pivot], bits_[c]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i != c && (bits_[i] & bit)) bits_[i] ^= bits_[c];
      }
    }
    for (std::size_t g = 0; g < n; ++g) out[g] = FieldElement(static_cast<std::uint16_t>((bits_[g] >> n) & 1u));
    return true;
  }
  if (!f.mul_table().empty()) {
    const std::size_t cols = n + 1;
    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t h = 0; h < n; ++h) work_[g * cols + h] = a[algebra_.left_index(static_cast<Elem>(g), static_cast<Elem>(h))].value();
      work_[g * cols + n] = g == 0 ? 1 : 0;
    }
    if (!eliminate(work_.data(), n, cols, f, true)) return false;
    for (std::size_t g = 0; g < n; ++g) out[g] = FieldElement(work_[g * cols + n]);
    return true;
  }
  std::vector<FieldElement> rhs(n);
  rhs[0] = f.one();
  auto x = solve(left_regular_matrix(AlgebraElement(algebra_, {a.begin(), a.end()})), rhs);
  if (!x) return false;
  std::copy(x->begin(), x->end(), out.begin());
  return true;
}

std::uint64_t normalized_code(std::span<const FieldElement> a, std::uint32_t q) {
  std::uint64_t code = 0;
  for (std::size_t g = a.size(); g-- > 1;) code = code * q + a[g].value();
  return code;
}

std::vector<FieldElement> decode_normalized(std::uint64_t code, const GroupAlgebra& algebra) {
  const std::size_t n = algebra.dimension();
  const FiniteField& f = algebra.field();
  const std::uint32_t q = f.order();
  std::vector<FieldElement> a(n);
  FieldElement sum;
  for (std::size_t g = 1; g < n; ++g) {
    a[g] = FieldElement(static_cast<std::uint16_t>(code % q));
    code /= q;
    sum = f.add(sum, a[g]);
  }
  a[0] = f.sub(f.one(), sum);
  return a;
}

std::uint64_t normalized_point_count(const GroupAlgebra& algebra) {
  return ipow_checked(algebra.field().order(), algebra.dimension() - 1);
}

namespace {

// Visits every augmentation-1 element with code in [lo, hi) in code order.
template <class Visit>
void for_each_normalized(const GroupAlgebra& algebra, std::uint64_t lo, std::uint64_t hi, Visit&& visit) {
  if (lo >= hi) return;
  const std::size_t n = algebra.dimension();
  const FiniteField& f = algebra.field();
  const std::uint16_t q = static_cast<std::uint16_t>(f.order() - 1);
  std::vector<FieldElement> a = decode_normalized(lo, algebra);
  for (std::uint64_t code = lo; code < hi; ++code) {
    visit(code, std::span<const FieldElement>(a));
    // Odometer step over positions 1..n-1, then refresh the identity coefficient.
    for (std::size_t g = 1; g < n; ++g) {
      if (a[g].value() < q) {
        a[g] = FieldElement(static_cast<std::uint16_t>(a[g].value() + 1));
        break;
      }
      a[g] = FieldElement{};
    }
    FieldElement sum;
    for (std::size_t g = 1; g < n; ++g) sum = f.add(sum, a[g]);
    a[0] = f.sub(f.one(), sum);
  }
}

void check_points(const GroupAlgebra& algebra, const EnumerationBudget& budget) {
  const std::uint64_t points = normalized_point_count(algebra);
  if (points > budget.max_points) {
    throw BudgetExceeded("enumerating " + algebra.name() + " needs " + std::to_string(points) +
                         " points, budget " + std::to_string(budget.max_points));
  }
}

}  // namespace

std::uint64_t count_normalized_units(const GroupAlgebra& algebra, const EnumerationBudget& budget, unsigned jobs) {
  check_points(algebra, budget);
  const std::uint64_t points = normalized_point_count(algebra);
  const std::size_t chunks = default_chunks(jobs);
  std::vector<std::uint64_t> counts(chunks, 0);
  parallel_chunks(points, chunks, jobs, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
    UnitTester tester(algebra);
    std::uint64_t count = 0;
    for_each_normalized(algebra, lo, hi, [&](std::uint64_t, std::span<const FieldElement> a) {
      if (tester.is_unit(a)) ++count;
    });
    counts[c] = count;
  });
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::vector<std::uint64_t> normalized_unit_codes(const GroupAlgebra& algebra, const EnumerationBudget& budget,
                                                 unsigned jobs) {
  check_points(algebra, budget);
  const std::uint64_t points = normalized_point_count(algebra);
  const std::size_t chunks = default_chunks(jobs);
  std::vector<std::vector<std::uint64_t>> parts(chunks);
  parallel_chunks(points, chunks, jobs, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
    UnitTester tester(algebra);
    for_each_normalized(algebra, lo, hi, [&](std::uint64_t code, std::span<const FieldElement> a) {
      if (tester.is_unit(a)) parts[c].push_back(code);
    });
    if (parts[c].size() > budget.max_unit_group) throw BudgetExceeded("unit group exceeds the storage budget");
  });
  std::vector<std::uint64_t> codes;
  for (auto& p : parts) codes.insert(codes.end(), p.begin(), p.end());
  if (codes.size() > budget.max_unit_group) {
    throw BudgetExceeded("|V(" + algebra.name() + ")| = " + std::to_string(codes.size()) +
                         " exceeds the storage budget " + std::to_string(budget.max_unit_group));
  }
  return codes;
}

std::vector<AlgebraElement> enumerate_nilpotents(const GroupAlgebra& algebra, const EnumerationBudget& budget,
                                                 unsigned jobs) {
  const std::size_t n = algebra.dimension();
  const FiniteField& f = algebra.field();
  const std::uint64_t points = ipow_checked(f.order(), n);
  if (points > budget.max_points) {
    throw BudgetExceeded("nilpotent scan of " + algebra.name() + " needs " + std::to_string(points) + " points");
  }
  const std::uint32_t q = f.order();
  const std::size_t chunks = default_chunks(jobs);
  std::vector<std::vector<std::vector<FieldElement>>> parts(chunks);
  parallel_chunks(points, chunks, jobs, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
    std::vector<FieldElement> x(n), sq(n);
    for (std::uint64_t code = lo; code < hi; ++code) {
      if (code == 0) continue;
      std::uint64_t rest = code;
      FieldElement aug;
      for (std::size_t pos = 1; pos <= n; ++pos) {
        // positions 1..n-1 are the non-identity elements, the identity is most significant
        const std::size_t g = pos == n ? 0 : pos;
        x[g] = FieldElement(static_cast<std::uint16_t>(rest % q));
        rest /= q;
        aug = f.add(aug, x[g]);
      }
      // Nilpotent elements lie in the augmentation ideal.
      if (!aug.is_zero()) continue;
      std::vector<FieldElement> cur = x;
      bool zero = false;
      for (std::size_t reach = 1;; reach *= 2) {
        if (std::all_of(cur.begin(), cur.end(), [](FieldElement e) { return e.is_zero(); })) {
          zero = true;
          break;
        }
        if (reach >= n) break;
        algebra.mul_into(cur.data(), cur.data(), sq.data());
        std::swap(cur, sq);
      }
      if (zero) parts[c].push_back(x);
    }
  });
  std::vector<AlgebraElement> out;
  for (auto& p : parts) {
    for (auto& v : p) out.emplace_back(algebra, std::move(v));
  }
  return out;
}

std::size_t IdempotentList::primitive_count() const {
  return static_cast<std::size_t>(std::count(primitive.begin(), primitive.end(), true));
}

IdempotentList enumerate_idempotents(const GroupAlgebra& algebra, const Subgroup& h, const EnumerationBudget& budget) {
  if (!(h.parent() == algebra.group())) throw AlgebraMismatch("subgroup of a different group");
  const FiniteField& f = algebra.field();
  const std::size_t n = algebra.dimension();
  const auto hs = h.elements();
  const std::size_t m = hs.size();
  const std::uint32_t q = f.order();

  IdempotentList out;
  std::vector<FieldElement> e(n), sq(n);
  auto test = [&]() {
    algebra.mul_into(e.data(), e.data(), sq.data());
    if (sq == e) out.elements.emplace_back(algebra, e);
  };

  if (ipow_checked(q, m) <= budget.max_points) {
    out.search_space = "exhaustive";
    const std::uint64_t points = ipow_checked(q, m);
    for (std::uint64_t code = 0; code < points; ++code) {
      std::uint64_t rest = code;
      for (std::size_t i = 1; i <= m; ++i) {
        const Elem g = hs[i == m ? 0 : i];
        e[g] = FieldElement(static_cast<std::uint16_t>(rest % q));
        rest /= q;
      }
      test();
    }
  } else if (is_abelian(h)) {
    // On commutative FH, x -> x^q is F-linear and sends h to h^q.
    out.search_space = "frobenius-fixed";
    const FiniteGroup& g = h.parent();
    std::vector<std::size_t> pos(n, 0);
    for (std::size_t i = 0; i < m; ++i) pos[hs[i]] = i;
    Matrix frob_minus_id(f, m, m);
    for (std::size_t i = 0; i < m; ++i) {
      const Elem image = g.pow(hs[i], q);
      frob_minus_id(pos[image], i) = f.add(frob_minus_id(pos[image], i), f.one());
      frob_minus_id(i, i) = f.sub(frob_minus_id(i, i), f.one());
    }
    const auto basis = nullspace(std::move(frob_minus_id));
    const std::uint64_t points = ipow_checked(q, basis.size());
    if (points > budget.max_points) {
      throw BudgetExceeded("idempotent scan of the Frobenius-fixed part of F[H] needs " + std::to_string(points) +
                           " points");
    }
    std::vector<FieldElement> local(m);
    for (std::uint64_t code = 0; code < points; ++code) {
      std::fill(local.begin(), local.end(), FieldElement{});
      std::uint64_t rest = code;
      for (const auto& b : basis) {
        const FieldElement lambda(static_cast<std::uint16_t>(rest % q));
        rest /= q;
        if (lambda.is_zero()) continue;
        for (std::size_t i = 0; i < m; ++i) local[i] = f.add(local[i], f.mul(lambda, b[i]));
      }
      std::fill(e.begin(), e.end(), FieldElement{});
      for (std::size_t i = 0; i < m; ++i) e[hs[i]] = local[i];
      test();
    }
  } else {
    throw BudgetExceeded("idempotent scan of F[H] needs " + std::to_string(ipow_checked(q, m)) + " points");
  }

  // e is primitive iff e != 0 and no idempotent f outside {0, e} has f e = f.
  out.primitive.assign(out.elements.size(), false);
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    const auto& ei = out.elements[i];
    if (ei.is_zero()) continue;
    bool primitive = true;
    for (std::size_t j = 0; j < out.elements.size() && primitive; ++j) {
      const auto& fj = out.elements[j];
      if (j == i || fj.is_zero()) continue;
      if (fj * ei == fj) primitive = false;
    }
    out.primitive[i] = primitive;
  }
  return out;
}

std::vector<std::size_t> summand_degrees(const Subgroup& d, const FiniteField& field) {
  if (!is_abelian(d)) throw std::invalid_argument("field summand count needs an abelian group");
  if (std::gcd<std::uint64_t, std::uint64_t>(field.order(), d.order()) != 1) {
    throw std::invalid_argument("field summand count needs gcd(q, |D|) = 1");
  }
  const FiniteGroup& g = d.parent();
  std::vector<char> seen(g.order(), 0);
  std::vector<std::size_t> sizes;
  for (Elem x : d.elements()) {
    if (seen[x]) continue;
    std::size_t size = 0;
    for (Elem y = x; !seen[y]; y = g.pow(y, field.order())) {
      seen[y] = 1;
      ++size;
    }
    sizes.push_back(size);
  }
  return sizes;
}

std::size_t field_summand_count(const Subgroup& d, const FiniteField& field) {
  return summand_degrees(d, field).size();
}

std::size_t field_summand_count(const FiniteGroup& d, const FiniteField& field) {
  return field_summand_count(Subgroup::whole(d), field);
}

std::vector<std::pair<std::string, std::string>> to_terms(const AlgebraElement& a) {
  std::vector<std::pair<std::string, std::string>> terms;
  const auto& g = a.algebra().group();
  const auto& f = a.algebra().field();
  for (Elem x : a.support()) terms.emplace_back(g.label(x), f.to_string(a.coeff(x)));
  return terms;
}

AlgebraElement from_terms(const GroupAlgebra& algebra,
                          const std::vector<std::pair<std::string, std::string>>& terms) {
  AlgebraElement out = algebra.zero();
  const auto& f = algebra.field();
  for (const auto& [label, coeff] : terms) {
    auto g = algebra.group().find_label(label);
    if (!g) throw std::invalid_argument("unknown group element label '" + label + "'");
    out.set_coeff(*g, f.add(out.coeff(*g), f.parse(coeff)));
  }
  return out;
}

std::string to_string(const AlgebraElement& a) {
  const auto terms = to_terms(a);
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [label, coeff] : terms) {
    if (!first) out << " + ";
    first = false;
    const bool unit_coeff = coeff == "1";
    const bool identity = label == a.algebra().group().label(0);
    if (identity) {
      out << (coeff.find('+') != std::string::npos ? "(" + coeff + ")" : coeff);
    } else if (unit_coeff) {
      out << label;
    } else {
      out << (coeff.find('+') != std::string::npos ? "(" + coeff + ")" : coeff) << "*" << label;
    }
  }
  return out.str();
}

}  // namespace vfg

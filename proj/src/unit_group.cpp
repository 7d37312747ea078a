#include "vfg/unit_group.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <unordered_map>

#include "vfg/parallel.hpp"
#include "vfg/random.hpp"

namespace vfg {

namespace {

std::string key_of(std::span<const FieldElement> a) {
  std::string k(a.size() * 2, '\0');
  for (std::size_t i = 0; i < a.size(); ++i) {
    k[2 * i] = static_cast<char>(a[i].value() & 0xff);
    k[2 * i + 1] = static_cast<char>(a[i].value() >> 8);
  }
  return k;
}

bool is_one(std::span<const FieldElement> a) {
  if (a[0].value() != 1) return false;
  return std::all_of(a.begin() + 1, a.end(), [](FieldElement c) { return c.is_zero(); });
}

}  // namespace

UnitGroup::UnitGroup(GroupAlgebra algebra, std::vector<std::uint64_t> codes, std::size_t table_cap)
    : algebra_(std::move(algebra)), dim_(algebra_.dimension()), codes_(std::move(codes)) {
  if (codes_.empty() || codes_.front() != 0) throw std::invalid_argument("unit list must contain the identity");
  if (!std::is_sorted(codes_.begin(), codes_.end())) throw std::invalid_argument("unit codes must be sorted");
  if (codes_.size() > std::numeric_limits<Index>::max()) throw std::length_error("unit group too large to index");
  coeffs_.resize(codes_.size() * dim_);
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    const auto c = decode_normalized(codes_[i], algebra_);
    std::copy(c.begin(), c.end(), coeffs_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
  }
  if (codes_.size() <= std::min(table_cap, kMaxTableOrder)) {
    build_table();
  } else {
    inv_.resize(codes_.size());
    UnitTester tester(algebra_);
    std::vector<FieldElement> out(dim_);
    for (Index i = 0; i < codes_.size(); ++i) {
      if (!tester.inverse(coeffs(i), out)) throw std::invalid_argument("unit list contains a non-unit");
      inv_[i] = index_of_checked(AlgebraElement(algebra_, out));
    }
  }
}

AlgebraElement UnitGroup::element(Index i) const {
  auto c = coeffs(i);
  return AlgebraElement(algebra_, {c.begin(), c.end()});
}

std::optional<UnitGroup::Index> UnitGroup::index_of(std::span<const FieldElement> a) const {
  FieldElement aug;
  for (auto c : a) aug = algebra_.field().add(aug, c);
  if (aug != algebra_.field().one()) return std::nullopt;
  const std::uint64_t code = normalized_code(a, algebra_.field().order());
  auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return std::nullopt;
  return static_cast<Index>(it - codes_.begin());
}

UnitGroup::Index UnitGroup::index_of_checked(const AlgebraElement& a) const {
  auto i = index_of(a.coeffs());
  if (!i) throw std::invalid_argument("element is not in the unit group: " + to_string(a));
  return *i;
}

UnitGroup::Index UnitGroup::lookup_product(Index i, Index j) const {
  std::vector<FieldElement> out(dim_);
  algebra_.mul_into(coeffs(i).data(), coeffs(j).data(), out.data());
  auto k = index_of(out);
  if (!k) throw std::logic_error("unit list is not closed under the product");
  return *k;
}

UnitGroup::Index UnitGroup::mul(Index i, Index j) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(j) * codes_.size() + i];
  return lookup_product(i, j);
}

void UnitGroup::build_table() {
  const std::size_t n = codes_.size();
  // Right multiplication by each generator, computed in the algebra.
  std::vector<Index> gens;
  std::vector<std::vector<std::uint16_t>> right;
  std::vector<char> member(n, 0);
  std::vector<Index> queue;
  auto close = [&] {
    std::fill(member.begin(), member.end(), 0);
    queue.assign(1, kIdentity);
    member[kIdentity] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& r : right) {
        const Index y = r[queue[head]];
        if (!member[y]) {
          member[y] = 1;
          queue.push_back(y);
        }
      }
    }
  };
  close();
  for (Index g = 1; g < n && queue.size() < n; ++g) {
    if (member[g]) continue;
    std::vector<std::uint16_t> r(n);
    for (Index x = 0; x < n; ++x) r[x] = static_cast<std::uint16_t>(lookup_product(x, g));
    gens.push_back(g);
    right.push_back(std::move(r));
    close();
  }
  // Breadth-first spanning tree: w = parent[w] * gens[via[w]].
  std::vector<Index> parent(n, 0), via(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<Index> order{kIdentity};
  seen[kIdentity] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Index w = order[head];
    for (std::size_t s = 0; s < right.size(); ++s) {
      const Index y = right[s][w];
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = w;
        via[y] = static_cast<Index>(s);
        order.push_back(y);
      }
    }
  }
  table_.resize(n * n);
  for (Index x = 0; x < n; ++x) table_[x] = static_cast<std::uint16_t>(x);
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Index w = order[k];
    const std::uint16_t* src = table_.data() + static_cast<std::size_t>(parent[w]) * n;
    std::uint16_t* dst = table_.data() + static_cast<std::size_t>(w) * n;
    const auto& r = right[via[w]];
    for (std::size_t x = 0; x < n; ++x) dst[x] = r[src[x]];
  }
  inv_.assign(n, 0);
  for (Index w = 0; w < n; ++w) {
    const std::uint16_t* col = table_.data() + static_cast<std::size_t>(w) * n;
    for (Index x = 0; x < n; ++x) {
      if (col[x] == kIdentity) inv_[x] = w;
    }
  }
}

UnitGroup::Index UnitGroup::pow(Index i, std::uint64_t e) const {
  Index result = kIdentity;
  Index base = i;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

std::size_t UnitGroup::element_order(Index i) const {
  std::size_t k = 1;
  for (Index x = i; x != kIdentity; x = mul(x, i)) ++k;
  return k;
}

bool UnitGroup::is_abelian() const {
  for (Index i = 0; i < order(); ++i) {
    for (Index j = i + 1; j < order(); ++j) {
      if (mul(i, j) != mul(j, i)) return false;
    }
  }
  return true;
}

UnitGroup enumerate_normalized_units(const GroupAlgebra& algebra, const EnumerationBudget& budget,
                                     std::size_t table_cap, unsigned jobs) {
  return UnitGroup(algebra, normalized_unit_codes(algebra, budget, jobs), table_cap);
}

std::vector<UnitGroup::Index> subgroup_closure(const UnitGroup& v, std::span<const UnitGroup::Index> generators) {
  using Index = UnitGroup::Index;
  std::vector<char> member(v.order(), 0);
  std::vector<Index> members{UnitGroup::kIdentity};
  member[UnitGroup::kIdentity] = 1;
  std::vector<Index> gens;
  for (Index g : generators) {
    if (member[g]) continue;
    gens.push_back(g);
    // Extend the closed set by the new generator; every old element is a
    // product of old generators, so words in `gens` reach the new closure.
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (Index s : gens) {
        const Index y = v.mul(members[head], s);
        if (!member[y]) {
          member[y] = 1;
          members.push_back(y);
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<std::vector<UnitGroup::Index>> lower_central_series(const UnitGroup& v) {
  using Index = UnitGroup::Index;
  if (!v.has_table()) throw std::length_error("lower central series needs a multiplication table");
  std::vector<Index> all(v.order());
  for (Index i = 0; i < v.order(); ++i) all[i] = i;
  std::vector<std::vector<Index>> series{all};
  while (true) {
    const auto& cur = series.back();
    std::vector<char> hit(v.order(), 0);
    std::vector<Index> comms;
    for (Index a : cur) {
      for (Index b = 0; b < v.order(); ++b) {
        const Index c = v.commutator(a, b);
        if (!hit[c]) {
          hit[c] = 1;
          comms.push_back(c);
        }
      }
    }
    std::sort(comms.begin(), comms.end());
    auto next = subgroup_closure(v, comms);
    if (next == cur) break;
    series.push_back(std::move(next));
    if (series.back().size() == 1) break;
  }
  return series;
}

std::optional<std::size_t> nilpotency_class_of_V(const UnitGroup& v) {
  const auto series = lower_central_series(v);
  if (series.back().size() != 1) return std::nullopt;
  return series.size() - 1;
}

std::vector<std::uint64_t> abelian_invariants(const UnitGroup& v) {
  if (!v.is_abelian()) throw std::invalid_argument("abelian invariants of a non-abelian unit group");
  std::vector<std::uint64_t> orders;
  orders.reserve(v.order());
  for (UnitGroup::Index i = 0; i < v.order(); ++i) orders.push_back(v.element_order(i));
  return abelian_invariants_from_orders(orders);
}

EngelTrace engel_pair_test(const UnitGroup& v, UnitGroup::Index x, UnitGroup::Index y) {
  if (x >= v.order() || y >= v.order()) throw std::out_of_range("element not in the unit group");
  EngelTrace t;
  std::unordered_map<UnitGroup::Index, std::size_t> pos;
  UnitGroup::Index c = x;
  while (true) {
    if (c == UnitGroup::kIdentity) {
      t.holds = true;
      t.depth = t.trace.size();
      t.trace.push_back(c);
      return t;
    }
    auto [it, fresh] = pos.emplace(c, t.trace.size());
    if (!fresh) {
      t.cycle_start = it->second;
      return t;
    }
    t.trace.push_back(c);
    c = v.commutator(c, y);
  }
}

std::optional<AlgebraEngelTrace> engel_trace(const AlgebraElement& x, const AlgebraElement& y, std::size_t max_steps) {
  const GroupAlgebra& alg = x.algebra();
  const std::size_t n = alg.dimension();
  UnitTester tester(alg);
  std::vector<FieldElement> yinv(n), cinv(n), t1(n), t2(n), next(n);
  if (!tester.inverse(y.coeffs(), yinv)) throw std::domain_error("engel trace of a non-unit");
  AlgebraEngelTrace t;
  std::unordered_map<std::string, std::size_t> pos;
  std::vector<FieldElement> c(x.coeffs().begin(), x.coeffs().end());
  for (std::size_t step = 0; step <= max_steps; ++step) {
    if (is_one(c)) {
      t.holds = true;
      t.depth = t.trace.size();
      t.trace.emplace_back(alg, c);
      return t;
    }
    auto [it, fresh] = pos.emplace(key_of(c), t.trace.size());
    if (!fresh) {
      t.cycle_start = it->second;
      return t;
    }
    t.trace.emplace_back(alg, c);
    if (!tester.inverse(c, cinv)) throw std::domain_error("engel trace of a non-unit");
    alg.mul_into(cinv.data(), yinv.data(), t1.data());
    alg.mul_into(c.data(), y.coeffs().data(), t2.data());
    alg.mul_into(t1.data(), t2.data(), next.data());
    std::swap(c, next);
  }
  return std::nullopt;
}

bool replay_engel_witness(const EngelWitness& w) {
  if (w.trace.empty() || !(w.trace.front() == w.x) || w.cycle_start >= w.trace.size()) return false;
  for (std::size_t k = 0; k < w.trace.size(); ++k) {
    if (is_one(w.trace[k].coeffs())) return false;
    const AlgebraElement next = unit_commutator(w.trace[k], w.y);
    const AlgebraElement& expected = k + 1 < w.trace.size() ? w.trace[k + 1] : w.trace[w.cycle_start];
    if (!(next == expected)) return false;
  }
  return true;
}

namespace {

EngelWitness witness_from(const UnitGroup& v, UnitGroup::Index x, UnitGroup::Index y, const EngelTrace& t) {
  EngelWitness w{v.element(x), v.element(y), {}, t.cycle_start};
  for (auto i : t.trace) w.trace.push_back(v.element(i));
  return w;
}

}  // namespace

EngelVerdict engel_group_test(const UnitGroup& v, unsigned jobs) {
  using Index = UnitGroup::Index;
  if (!v.has_table()) throw std::length_error("exhaustive Engel test needs a multiplication table");
  const std::size_t n = v.order();
  const std::size_t chunks = default_chunks(jobs);
  struct Part {
    std::size_t max_depth = 0;
    std::optional<std::pair<Index, Index>> least;  // (x, y)
  };
  std::vector<Part> parts(chunks);
  parallel_chunks(n, chunks, jobs, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
    // depth[x] = steps from x to 1 under x -> (x, y); kUnreached when never.
    constexpr std::uint32_t kUnknown = 0xffffffffu, kUnreached = 0xfffffffeu, kOnPath = 0xfffffffdu;
    std::vector<std::uint32_t> depth(n);
    std::vector<Index> path;
    Part& part = parts[c];
    for (Index y = static_cast<Index>(lo); y < hi; ++y) {
      std::fill(depth.begin(), depth.end(), kUnknown);
      depth[UnitGroup::kIdentity] = 0;
      const Index yinv = v.inv(y);
      for (Index start = 0; start < n; ++start) {
        if (depth[start] != kUnknown) continue;
        path.clear();
        Index cur = start;
        while (depth[cur] == kUnknown) {
          depth[cur] = kOnPath;
          path.push_back(cur);
          cur = v.mul(v.mul(v.inv(cur), yinv), v.mul(cur, y));
        }
        // cur is resolved, or on the current path (a 1-free cycle).
        std::uint32_t d = (depth[cur] == kOnPath || depth[cur] == kUnreached) ? kUnreached : depth[cur];
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
          if (d != kUnreached) ++d;
          depth[*it] = d;
        }
      }
      for (Index x = 0; x < n; ++x) {
        if (depth[x] == kUnreached) {
          if (!part.least || std::make_pair(x, y) < *part.least) part.least = std::make_pair(x, y);
          break;
        }
      }
      for (Index x = 0; x < n; ++x) {
        if (depth[x] != kUnreached) part.max_depth = std::max<std::size_t>(part.max_depth, depth[x]);
      }
    }
  });
  EngelVerdict verdict;
  verdict.mode = "exhaustive";
  verdict.pairs_tested = static_cast<std::uint64_t>(n) * n;
  std::optional<std::pair<Index, Index>> least;
  for (const auto& p : parts) {
    verdict.max_depth = std::max(verdict.max_depth, p.max_depth);
    if (p.least && (!least || *p.least < *least)) least = p.least;
  }
  if (least) {
    verdict.engel = false;
    verdict.witness = witness_from(v, least->first, least->second, engel_pair_test(v, least->first, least->second));
  }
  return verdict;
}

AlgebraElement random_normalized_unit(const GroupAlgebra& algebra, std::uint64_t seed, std::uint64_t stream) {
  auto rng = stream_rng(seed, stream);
  const FiniteField& f = algebra.field();
  const std::size_t n = algebra.dimension();
  UnitTester tester(algebra);
  std::vector<FieldElement> a(n);
  while (true) {
    FieldElement sum;
    for (std::size_t g = 1; g < n; ++g) {
      a[g] = FieldElement(static_cast<std::uint16_t>(rng() % f.order()));
      sum = f.add(sum, a[g]);
    }
    a[0] = f.sub(f.one(), sum);
    if (tester.is_unit(a)) return AlgebraElement(algebra, a);
  }
}

EngelVerdict engel_group_test_sampled(const GroupAlgebra& algebra, std::uint64_t count, std::uint64_t seed,
                                      unsigned jobs, std::size_t max_steps) {
  const std::size_t chunks = default_chunks(jobs);
  struct Part {
    std::size_t max_depth = 0;
    std::uint64_t undecided = 0;
    std::optional<std::uint64_t> failure;
    std::optional<EngelWitness> witness;
  };
  std::vector<Part> parts(chunks);
  parallel_chunks(count, chunks, jobs, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
    Part& part = parts[c];
    for (std::uint64_t i = lo; i < hi; ++i) {
      const AlgebraElement x = random_normalized_unit(algebra, seed, 2 * i);
      const AlgebraElement y = random_normalized_unit(algebra, seed, 2 * i + 1);
      auto t = engel_trace(x, y, max_steps);
      if (!t) {
        ++part.undecided;
      } else if (t->holds) {
        part.max_depth = std::max(part.max_depth, t->depth);
      } else {
        part.failure = i;
        part.witness = EngelWitness{x, y, std::move(t->trace), t->cycle_start};
        return;
      }
    }
  });
  EngelVerdict verdict;
  verdict.mode = "sampled";
  verdict.pairs_tested = count;
  // Chunks are merged in order up to the first failure, so the statistics
  // cover exactly the samples before it whatever the worker count.
  for (auto& p : parts) {
    verdict.max_depth = std::max(verdict.max_depth, p.max_depth);
    verdict.undecided += p.undecided;
    if (p.failure) {
      verdict.engel = false;
      verdict.pairs_tested = *p.failure + 1;
      verdict.witness = std::move(p.witness);
      break;
    }
  }
  return verdict;
}

OnePlusIdeal one_plus_ideal_subgroup(const UnitGroup& v, const IdealBasis& ideal) {
  using Index = UnitGroup::Index;
  if (!(v.algebra() == ideal.algebra())) throw AlgebraMismatch("ideal of a different algebra");
  const FiniteField& f = v.algebra().field();
  OnePlusIdeal out;
  out.expected_order = saturating_pow(f.order(), ideal.dimension());
  std::vector<char> member(v.order(), 0);
  std::vector<FieldElement> z(v.algebra().dimension());
  for (Index i = 0; i < v.order(); ++i) {
    auto c = v.coeffs(i);
    std::copy(c.begin(), c.end(), z.begin());
    z[0] = f.sub(z[0], f.one());
    if (ideal.echelon().contains(z)) {
      member[i] = 1;
      out.members.push_back(i);
    }
  }
  out.all_units = out.members.size() == out.expected_order;
  out.subgroup = true;
  for (Index a : out.members) {
    for (Index b : out.members) {
      if (!member[v.mul(a, b)]) {
        out.subgroup = false;
        break;
      }
    }
    if (!out.subgroup) break;
  }
  out.normal = out.subgroup;
  for (Index g = 0; g < v.order() && out.normal; ++g) {
    const Index gi = v.inv(g);
    for (Index a : out.members) {
      if (!member[v.mul(v.mul(gi, a), g)]) {
        out.normal = false;
        break;
      }
    }
  }
  out.p_part = prime_part(v.order(), f.characteristic());
  out.is_sylow = out.subgroup && out.members.size() == out.p_part;
  return out;
}

ProjectionReport natural_projection_check(const UnitGroup& v, const UnitGroup& image, const Quotient& quotient,
                                          const IdealBasis& kernel_ideal) {
  using Index = UnitGroup::Index;
  ProjectionReport r;
  std::vector<char> hit(image.order(), 0);
  std::vector<char> in_kernel(v.order(), 0);
  for (Index i = 0; i < v.order(); ++i) {
    const AlgebraElement pi = collapse(v.element(i), quotient, image.algebra());
    const auto j = image.index_of(pi.coeffs());
    if (!j) return r;  // the image left V(F[G/N]); nothing else is meaningful
    hit[*j] = 1;
    if (*j == UnitGroup::kIdentity) {
      in_kernel[i] = 1;
      ++r.kernel_order;
    }
  }
  r.onto = std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
  r.image_order = image.order();
  const OnePlusIdeal k = one_plus_ideal_subgroup(v, kernel_ideal);
  r.kernel_matches = k.members.size() == r.kernel_order &&
                     std::all_of(k.members.begin(), k.members.end(), [&](Index i) { return in_kernel[i] != 0; });
  r.order_law = v.order() == r.kernel_order * image.order();
  if (image.has_table() && image.is_abelian() && v.has_table()) {
    // Cosets xK named by their least index; the order of xK is the least m
    // with x^m in K.
    std::vector<Index> rep(v.order(), std::numeric_limits<Index>::max());
    for (Index x = 0; x < v.order(); ++x) {
      for (Index kk : k.members) rep[x] = std::min(rep[x], v.mul(x, kk));
    }
    std::vector<std::uint64_t> orders;
    for (Index x = 0; x < v.order(); ++x) {
      if (rep[x] != x) continue;
      std::uint64_t m = 1;
      for (Index y = x; !in_kernel[y]; y = v.mul(y, x)) ++m;
      orders.push_back(m);
    }
    r.quotient_invariants = abelian_invariants_from_orders(orders);
    r.image_invariants = abelian_invariants(image);
    r.invariants_match = *r.quotient_invariants == *r.image_invariants;
  }
  return r;
}

}  // namespace vfg

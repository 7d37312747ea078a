#include "vfg/group.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace vfg {

namespace {

std::string power_label(const std::string& base, std::size_t e) {
  if (e == 0) return "";
  if (e == 1) return base;
  return base + "^" + std::to_string(e);
}

// Closure of the identity under right multiplication by the generators.
ElementSet close(const FiniteGroup& g, const std::vector<Elem>& generators) {
  ElementSet seen;
  seen.set(0);
  std::vector<Elem> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem x = queue[head];
    for (Elem s : generators) {
      const Elem y = g.mul(x, s);
      if (!seen.test(y)) {
        seen.set(y);
        queue.push_back(y);
      }
    }
  }
  return seen;
}

std::vector<Elem> mask_elements(const ElementSet& m, std::size_t n) {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (m.test(i)) out.push_back(static_cast<Elem>(i));
  }
  return out;
}

bool is_prime_small(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

FiniteGroup::FiniteGroup(const std::vector<std::vector<Elem>>& table, std::vector<std::string> labels,
                         std::string name) {
  const std::size_t n = table.size();
  if (n == 0) throw std::invalid_argument("group table is empty");
  if (n > kMaxOrder) throw std::invalid_argument("group order " + std::to_string(n) + " exceeds 256");
  auto d = std::make_shared<detail::GroupData>();
  d->n = n;
  d->table.resize(n * n);
  for (std::size_t g = 0; g < n; ++g) {
    if (table[g].size() != n) throw std::invalid_argument("group table row " + std::to_string(g) + " has wrong length");
    for (std::size_t h = 0; h < n; ++h) {
      if (table[g][h] >= n) throw std::invalid_argument("group table entry out of range");
      d->table[g * n + h] = static_cast<std::uint16_t>(table[g][h]);
    }
  }
  for (std::size_t g = 0; g < n; ++g) {
    if (d->table[g] != g || d->table[g * n] != g) {
      throw std::invalid_argument("index 0 is not the identity of the group table");
    }
  }
  std::vector<char> seen(n);
  for (std::size_t g = 0; g < n; ++g) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t h = 0; h < n; ++h) {
      if (seen[d->table[g * n + h]]++) throw std::invalid_argument("group table row " + std::to_string(g) + " is not a permutation");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t h = 0; h < n; ++h) {
      if (seen[d->table[h * n + g]]++) throw std::invalid_argument("group table column " + std::to_string(g) + " is not a permutation");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = d->table[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        if (d->table[ab * n + c] != d->table[a * n + d->table[b * n + c]]) {
          throw std::invalid_argument("group table is not associative at (" + std::to_string(a) + ", " +
                                      std::to_string(b) + ", " + std::to_string(c) + ")");
        }
      }
    }
  }
  d->inv.resize(n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) {
      if (d->table[g * n + h] == 0) {
        d->inv[g] = static_cast<Elem>(h);
        break;
      }
    }
  }
  if (labels.empty()) {
    labels.resize(n);
    labels[0] = "1";
    for (std::size_t g = 1; g < n; ++g) labels[g] = "g" + std::to_string(g);
  }
  if (labels.size() != n) throw std::invalid_argument("label count does not match group order");
  std::unordered_set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != n) throw std::invalid_argument("group element labels are not distinct");
  d->labels = std::move(labels);
  d->name = std::move(name);
  d_ = std::move(d);
}

Elem FiniteGroup::pow(Elem g, std::int64_t e) const {
  if (e < 0) {
    g = inv(g);
    e = -e;
  }
  Elem result = 0;
  while (e > 0) {
    if (e & 1) result = mul(result, g);
    g = mul(g, g);
    e >>= 1;
  }
  return result;
}

std::size_t FiniteGroup::element_order(Elem g) const {
  std::size_t k = 1;
  for (Elem x = g; x != 0; x = mul(x, g)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (Elem g = 0; g < order(); ++g) {
    for (Elem h = g + 1; h < order(); ++h) {
      if (mul(g, h) != mul(h, g)) return false;
    }
  }
  return true;
}

std::size_t FiniteGroup::exponent() const {
  std::size_t e = 1;
  for (Elem g = 0; g < order(); ++g) e = std::lcm(e, element_order(g));
  return e;
}

std::optional<Elem> FiniteGroup::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < d_->labels.size(); ++i) {
    if (d_->labels[i] == label) return static_cast<Elem>(i);
  }
  return std::nullopt;
}

FiniteGroup FiniteGroup::renamed(std::string name) const {
  FiniteGroup copy = *this;
  auto d = std::make_shared<detail::GroupData>(*d_);
  d->name = std::move(name);
  copy.d_ = std::move(d);
  return copy;
}

std::vector<std::vector<Elem>> FiniteGroup::table() const {
  const std::size_t n = order();
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) t[g][h] = mul(static_cast<Elem>(g), static_cast<Elem>(h));
  }
  return t;
}

Subgroup::Subgroup(FiniteGroup parent, const ElementSet& members)
    : parent_(std::move(parent)), members_(members), order_(members.count()) {}

Subgroup Subgroup::trivial(const FiniteGroup& g) {
  ElementSet m;
  m.set(0);
  return Subgroup(g, m);
}

Subgroup Subgroup::whole(const FiniteGroup& g) {
  ElementSet m;
  for (std::size_t i = 0; i < g.order(); ++i) m.set(i);
  return Subgroup(g, m);
}

std::vector<Elem> Subgroup::elements() const { return mask_elements(members_, parent_.order()); }

bool mask_less(const ElementSet& a, const ElementSet& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a.test(i) != b.test(i)) return b.test(i);
  }
  return false;
}

FiniteGroup trivial_group() { return FiniteGroup({{0}}, {"1"}, "C1"); }

FiniteGroup cyclic(std::size_t n) {
  if (n == 0 || n > FiniteGroup::kMaxOrder) throw std::invalid_argument("cyclic group order out of range");
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = i == 0 ? "1" : power_label("a", i);
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<Elem>((i + j) % n);
  }
  return FiniteGroup(t, std::move(labels), "C" + std::to_string(n));
}

FiniteGroup metacyclic(std::size_t m, std::size_t t, std::string name) {
  if (m == 0 || 2 * m > FiniteGroup::kMaxOrder) throw std::invalid_argument("metacyclic group order out of range");
  if ((t * t) % m != 1 % m) throw std::invalid_argument("metacyclic twist must square to 1 modulo m");
  const std::size_t n = 2 * m;
  std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
  std::vector<std::string> labels(n);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      std::string l = power_label("a", i) + (j ? "b" : "");
      labels[i + m * j] = l.empty() ? "1" : l;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t i = x % m, j = x / m;
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t k = y % m, l = y / m;
      const std::size_t twisted = j ? (t * k) % m : k;
      table[x][y] = static_cast<Elem>((i + twisted) % m + m * ((j + l) % 2));
    }
  }
  return FiniteGroup(table, std::move(labels), std::move(name));
}

FiniteGroup dihedral(std::size_t order) {
  if (order < 2 || order % 2 != 0) throw std::invalid_argument("dihedral group order must be even and at least 2");
  const std::size_t m = order / 2;
  FiniteGroup base = metacyclic(m, m - 1 == 0 ? 0 : m - 1, "D" + std::to_string(m));
  // Relabel in the rotation/reflection vocabulary.
  std::vector<std::string> labels(order);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      std::string l = power_label("r", i) + (j ? "s" : "");
      labels[i + m * j] = l.empty() ? "1" : l;
    }
  }
  return FiniteGroup(base.table(), std::move(labels), "D" + std::to_string(m));
}

FiniteGroup quaternion8() {
  std::vector<std::vector<Elem>> t(8, std::vector<Elem>(8));
  for (std::size_t x = 0; x < 8; ++x) {
    const std::size_t a = x % 4, b = x / 4;
    for (std::size_t y = 0; y < 8; ++y) {
      const std::size_t c = y % 4, d = y / 4;
      const std::size_t xe = (a + (b ? 4 - c : c) + (b && d ? 2 : 0)) % 4;
      t[x][y] = static_cast<Elem>(xe + 4 * ((b + d) % 2));
    }
  }
  return FiniteGroup(t, {"1", "x", "x^2", "x^3", "y", "xy", "x^2y", "x^3y"}, "Q8");
}

FiniteGroup semidihedral16() { return metacyclic(8, 3, "SD16"); }

FiniteGroup symmetric(std::size_t n) {
  if (n == 0 || n > 4) throw std::invalid_argument("symmetric groups are supported for 1 <= n <= 4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, Elem> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<Elem>(i);
  const std::size_t order = perms.size();
  std::vector<std::vector<Elem>> t(order, std::vector<Elem>(order));
  for (std::size_t g = 0; g < order; ++g) {
    for (std::size_t h = 0; h < order; ++h) {
      std::vector<int> gh(n);
      for (std::size_t i = 0; i < n; ++i) gh[i] = perms[h][perms[g][i]];
      t[g][h] = index[gh];
    }
  }
  std::vector<std::string> labels(order);
  for (std::size_t g = 0; g < order; ++g) {
    std::string label;
    std::vector<char> done(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || perms[g][i] == static_cast<int>(i)) continue;
      label += "(";
      std::size_t j = i;
      bool first = true;
      while (!done[j]) {
        done[j] = 1;
        if (!first) label += ",";
        label += std::to_string(j + 1);
        first = false;
        j = static_cast<std::size_t>(perms[g][j]);
      }
      label += ")";
    }
    labels[g] = label.empty() ? "()" : label;
  }
  return FiniteGroup(t, std::move(labels), "S" + std::to_string(n));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order();
  if (na * nb > FiniteGroup::kMaxOrder) throw std::invalid_argument("direct product order exceeds 256");
  const std::size_t n = na * nb;
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    const Elem xa = static_cast<Elem>(x / nb), xb = static_cast<Elem>(x % nb);
    labels[x] = x == 0 ? "1" : "(" + a.label(xa) + "," + b.label(xb) + ")";
    for (std::size_t y = 0; y < n; ++y) {
      const Elem ya = static_cast<Elem>(y / nb), yb = static_cast<Elem>(y % nb);
      t[x][y] = static_cast<Elem>(a.mul(xa, ya) * nb + b.mul(xb, yb));
    }
  }
  return FiniteGroup(t, std::move(labels), a.name() + "x" + b.name());
}

FiniteGroup parse_group_spec(std::string_view spec) {
  auto fail = [&](const std::string& why) -> FiniteGroup {
    throw std::invalid_argument("malformed group spec '" + std::string(spec) + "': " + why);
  };
  auto number = [&](std::string_view s) -> std::size_t {
    if (s.empty() || s.size() > 4) fail("expected a number");
    std::size_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') fail("expected a number");
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
  };
  auto factor = [&](std::string_view f) -> FiniteGroup {
    if (f == "1" || f == "C1") return trivial_group();
    if (f == "Q8") return quaternion8();
    if (f == "SD16") return semidihedral16();
    if (f.size() >= 2 && f[0] == 'C') return cyclic(number(f.substr(1)));
    if (f.size() >= 2 && f[0] == 'D') return dihedral(2 * number(f.substr(1)));
    if (f.size() >= 2 && f[0] == 'S') return symmetric(number(f.substr(1)));
    return fail("unknown constructor '" + std::string(f) + "'");
  };
  if (spec.empty()) return fail("empty");
  std::optional<FiniteGroup> result;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t end = spec.find('x', start);
    if (end == std::string_view::npos) end = spec.size();
    if (end == start) fail("empty factor");
    FiniteGroup f = factor(spec.substr(start, end - start));
    result = result ? direct_product(*result, f) : f;
    start = end + 1;
  }
  return result->renamed(std::string(spec));
}

FiniteGroup group_from_json(std::string_view text, std::string name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("Cayley table is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("table")) throw std::invalid_argument("Cayley table document needs a 'table' field");
  std::vector<std::vector<Elem>> table;
  std::vector<std::string> labels;
  try {
    table = doc.at("table").get<std::vector<std::vector<Elem>>>();
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();
    if (doc.contains("n") && doc.at("n").get<std::size_t>() != table.size()) {
      throw std::invalid_argument("field 'n' does not match the table size");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed Cayley table document: ") + e.what());
  }
  return FiniteGroup(table, std::move(labels), std::move(name));
}

FiniteGroup load_cayley_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open Cayley table file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  auto slash = path.find_last_of('/');
  return group_from_json(buf.str(), slash == std::string::npos ? path : path.substr(slash + 1));
}

std::string group_to_json(const FiniteGroup& g) {
  nlohmann::json doc;
  doc["n"] = g.order();
  doc["table"] = g.table();
  doc["labels"] = g.labels();
  return doc.dump();
}

Elem commutator(const FiniteGroup& g, Elem x, Elem y) {
  return g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& generators) {
  return Subgroup(g, close(g, generators));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  auto gens = a.elements();
  for (Elem x : b.elements()) {
    if (!a.contains(x)) gens.push_back(x);
  }
  return generated_subgroup(a.parent(), gens);
}

bool is_closed(const FiniteGroup& g, const ElementSet& set) {
  if (!set.test(0)) return false;
  const auto els = mask_elements(set, g.order());
  for (Elem x : els) {
    for (Elem y : els) {
      if (!set.test(g.mul(x, y))) return false;
    }
  }
  return true;
}

bool is_normal(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  const auto els = h.elements();
  for (Elem x = 0; x < g.order(); ++x) {
    for (Elem y : els) {
      if (!h.contains(g.conj(y, x))) return false;
    }
  }
  return true;
}

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
  const FiniteGroup& g = a.parent();
  ElementSet comms;
  for (Elem x : a.elements()) {
    for (Elem y : b.elements()) comms.set(commutator(g, x, y));
  }
  comms.reset(0);
  return generated_subgroup(g, mask_elements(comms, g.order()));
}

Subgroup derived_subgroup(const FiniteGroup& g) {
  const auto whole = Subgroup::whole(g);
  return commutator_subgroup(whole, whole);
}

Subgroup centralizer(const FiniteGroup& g, const ElementSet& set) {
  const auto els = mask_elements(set, g.order());
  ElementSet out;
  for (Elem z = 0; z < g.order(); ++z) {
    bool commutes = true;
    for (Elem x : els) {
      if (g.mul(z, x) != g.mul(x, z)) {
        commutes = false;
        break;
      }
    }
    if (commutes) out.set(z);
  }
  return Subgroup(g, out);
}

Subgroup center(const FiniteGroup& g) { return centralizer(g, Subgroup::whole(g).members()); }

Subgroup normalizer(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  const auto els = h.elements();
  ElementSet out;
  for (Elem x = 0; x < g.order(); ++x) {
    bool normalizes = true;
    for (Elem y : els) {
      if (!h.contains(g.conj(y, x))) {
        normalizes = false;
        break;
      }
    }
    if (normalizes) out.set(x);
  }
  return Subgroup(g, out);
}

bool is_abelian(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  const auto els = h.elements();
  for (Elem x : els) {
    for (Elem y : els) {
      if (g.mul(x, y) != g.mul(y, x)) return false;
    }
  }
  return true;
}

bool is_central(const Subgroup& h) { return h.is_subgroup_of(center(h.parent())); }

std::vector<Subgroup> all_subgroups(const FiniteGroup& g, std::size_t max_order) {
  if (g.order() > max_order) {
    throw std::length_error("subgroup lattice budget exceeded: |G| = " + std::to_string(g.order()) + " > " +
                            std::to_string(max_order));
  }
  struct Entry {
    ElementSet mask;
    std::vector<Elem> gens;
  };
  std::unordered_set<ElementSet> seen;
  std::vector<Entry> cyclics;
  for (Elem x = 0; x < g.order(); ++x) {
    ElementSet m = close(g, {x});
    if (seen.insert(m).second) cyclics.push_back({m, {x}});
  }
  std::vector<Entry> all = cyclics;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& c : cyclics) {
      if ((c.mask & ~all[i].mask).none()) continue;
      auto gens = all[i].gens;
      gens.push_back(c.gens.front());
      ElementSet m = close(g, gens);
      if (seen.insert(m).second) all.push_back({m, std::move(gens)});
    }
  }
  std::vector<Subgroup> out;
  out.reserve(all.size());
  for (auto& e : all) out.emplace_back(g, e.mask);
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return mask_less(a.members(), b.members());
  });
  return out;
}

std::vector<std::uint32_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<std::uint32_t>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

std::uint64_t prime_part(std::uint64_t n, std::uint32_t r) {
  std::uint64_t part = 1;
  if (r < 2) return 1;
  while (n % r == 0) {
    n /= r;
    part *= r;
  }
  return part;
}

bool is_p_group(const Subgroup& h, std::uint32_t p) { return prime_part(h.order(), p) == h.order(); }

Subgroup sylow_subgroup(const FiniteGroup& g, std::uint32_t r) {
  if (!is_prime_small(r)) throw std::invalid_argument("Sylow subgroup requested for non-prime " + std::to_string(r));
  const std::uint64_t target = prime_part(g.order(), r);
  if (target == 1) return Subgroup::trivial(g);
  ElementSet r_elements;
  for (Elem x = 0; x < g.order(); ++x) {
    if (prime_part(g.element_order(x), r) == g.element_order(x)) r_elements.set(x);
  }
  if (r_elements.count() == target && is_closed(g, r_elements)) return Subgroup(g, r_elements);
  if (g.order() <= 64) {
    std::optional<Subgroup> best;
    for (auto& h : all_subgroups(g)) {
      if (h.order() == target && (!best || mask_less(h.members(), best->members()))) best = h;
    }
    return *best;
  }
  // Grow an r-subgroup inside successive normalisers; terminates by Sylow theory.
  Subgroup p = Subgroup::trivial(g);
  while (p.order() < target) {
    const Subgroup norm = normalizer(p);
    bool grown = false;
    for (Elem x : norm.elements()) {
      if (p.contains(x)) continue;
      if (p.contains(g.pow(x, r))) {
        auto gens = p.elements();
        gens.push_back(x);
        p = generated_subgroup(g, gens);
        grown = true;
        break;
      }
    }
    if (!grown) throw std::logic_error("Sylow growth stalled");
  }
  return p;
}

std::vector<Subgroup> lower_central_series(const FiniteGroup& g) {
  const Subgroup whole = Subgroup::whole(g);
  std::vector<Subgroup> series{whole};
  while (!series.back().is_trivial()) {
    Subgroup next = commutator_subgroup(series.back(), whole);
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

std::optional<std::size_t> nilpotency_class(const FiniteGroup& g) {
  const auto series = lower_central_series(g);
  if (!series.back().is_trivial()) return std::nullopt;
  return series.size() - 1;
}

std::optional<PComplement> central_p_complement(const FiniteGroup& g, std::uint32_t p) {
  Subgroup sylow = sylow_subgroup(g, p);
  if (!is_normal(sylow)) return std::nullopt;
  ElementSet coprime;
  for (Elem x = 0; x < g.order(); ++x) {
    if (g.element_order(x) % p != 0) coprime.set(x);
  }
  if (coprime.count() * sylow.order() != g.order() || !is_closed(g, coprime)) return std::nullopt;
  Subgroup complement(g, coprime);
  if (!is_central(complement)) return std::nullopt;
  return PComplement{std::move(sylow), std::move(complement)};
}

std::vector<std::uint64_t> abelian_invariants_from_orders(const std::vector<std::uint64_t>& orders) {
  const std::uint64_t n = orders.size();
  if (n == 0) throw std::invalid_argument("empty element-order census");
  // Per prime: partition of the exponent of the r-part.
  std::vector<std::vector<std::uint64_t>> prime_factors;  // descending prime powers per prime
  for (std::uint32_t r : prime_divisors(n)) {
    const std::uint64_t r_part = prime_part(n, r);
    std::vector<std::uint32_t> at_least;  // at_least[j-1] = number of cyclic factors of order >= r^j
    std::uint64_t prev = 1, rj = 1;
    while (prev < r_part) {
      rj *= r;
      std::uint64_t count = 0;
      for (auto o : orders) {
        if (rj % o == 0) ++count;
      }
      if (count % prev != 0) throw std::invalid_argument("element-order census is not that of an abelian group");
      std::uint64_t ratio = count / prev;
      std::uint32_t k = 0;
      while (ratio > 1) {
        if (ratio % r != 0) throw std::invalid_argument("element-order census is not that of an abelian group");
        ratio /= r;
        ++k;
      }
      if (k == 0) throw std::invalid_argument("element-order census is not that of an abelian group");
      if (!at_least.empty() && k > at_least.back()) {
        throw std::invalid_argument("element-order census is not that of an abelian group");
      }
      at_least.push_back(k);
      prev = count;
    }
    std::vector<std::uint64_t> parts;
    for (std::uint32_t i = 1; i <= (at_least.empty() ? 0 : at_least.front()); ++i) {
      std::uint64_t power = 1;
      for (auto k : at_least) {
        if (k >= i) power *= r;
      }
      parts.push_back(power);
    }
    prime_factors.push_back(std::move(parts));  // descending
  }
  std::size_t m = 0;
  for (auto& parts : prime_factors) m = std::max(m, parts.size());
  std::vector<std::uint64_t> invariants(m, 1);
  for (auto& parts : prime_factors) {
    for (std::size_t i = 0; i < parts.size(); ++i) invariants[m - 1 - i] *= parts[i];
  }
  return invariants;
}

std::vector<std::uint64_t> abelian_invariants(const Subgroup& a) {
  if (!is_abelian(a)) throw std::invalid_argument("abelian invariants requested for a non-abelian group");
  std::vector<std::uint64_t> orders;
  for (Elem x : a.elements()) orders.push_back(a.parent().element_order(x));
  return abelian_invariants_from_orders(orders);
}

std::vector<std::uint64_t> abelian_invariants(const FiniteGroup& a) { return abelian_invariants(Subgroup::whole(a)); }

Quotient quotient(const Subgroup& normal) {
  if (!is_normal(normal)) throw std::invalid_argument("quotient by a non-normal subgroup");
  const FiniteGroup& g = normal.parent();
  const std::size_t n = g.order();
  const auto members = normal.elements();
  std::vector<Elem> rep_of(n, static_cast<Elem>(n));
  std::vector<Elem> reps;
  for (Elem x = 0; x < n; ++x) {
    if (rep_of[x] != n) continue;
    reps.push_back(x);
    for (Elem h : members) rep_of[g.mul(x, h)] = x;
  }
  std::vector<Elem> index_of_rep(n, 0);
  for (std::size_t i = 0; i < reps.size(); ++i) index_of_rep[reps[i]] = static_cast<Elem>(i);
  std::vector<Elem> coset_of(n);
  for (Elem x = 0; x < n; ++x) coset_of[x] = index_of_rep[rep_of[x]];
  const std::size_t m = reps.size();
  std::vector<std::vector<Elem>> table(m, std::vector<Elem>(m));
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    labels[i] = i == 0 ? "1" : g.label(reps[i]) + "N";
    for (std::size_t j = 0; j < m; ++j) table[i][j] = coset_of[g.mul(reps[i], reps[j])];
  }
  return Quotient{FiniteGroup(table, std::move(labels), g.name() + "/N"), std::move(coset_of), std::move(reps)};
}

SubgroupAsGroup as_group(const Subgroup& h, std::string name) {
  const FiniteGroup& g = h.parent();
  const auto els = h.elements();
  std::vector<Elem> position(g.order(), 0);
  for (std::size_t i = 0; i < els.size(); ++i) position[els[i]] = static_cast<Elem>(i);
  std::vector<std::vector<Elem>> table(els.size(), std::vector<Elem>(els.size()));
  std::vector<std::string> labels(els.size());
  for (std::size_t i = 0; i < els.size(); ++i) {
    labels[i] = g.label(els[i]);
    for (std::size_t j = 0; j < els.size(); ++j) table[i][j] = position[g.mul(els[i], els[j])];
  }
  if (name.empty()) name = describe(h);
  return SubgroupAsGroup{FiniteGroup(table, std::move(labels), std::move(name)), els};
}

FiniteGroup relabel(const FiniteGroup& g, const std::vector<Elem>& perm) {
  const std::size_t n = g.order();
  if (perm.size() != n || perm[0] != 0) throw std::invalid_argument("relabelling must fix the identity");
  std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
  std::vector<std::string> labels(n);
  for (Elem x = 0; x < n; ++x) {
    labels[perm[x]] = g.label(x);
    for (Elem y = 0; y < n; ++y) table[perm[x]][perm[y]] = perm[g.mul(x, y)];
  }
  return FiniteGroup(table, std::move(labels), g.name());
}

std::string describe(const Subgroup& h) {
  std::string out = "{";
  bool first = true;
  for (Elem x : h.elements()) {
    if (!first) out += ", ";
    out += h.parent().label(x);
    first = false;
  }
  return out + "}";
}

}  // namespace vfg

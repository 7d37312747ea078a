#include "vfg/finite_field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace vfg {

namespace {

using Poly = std::vector<std::uint32_t>;  // low to high

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime, a != 0 mod p
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quot * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quot * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Remainder of a modulo b over GF(p); b nonzero.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = static_cast<std::uint32_t>((c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  trim(c);
  return c;
}

Poly poly_sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::uint32_t x = i < a.size() ? a[i] : 0;
    const std::uint32_t y = i < b.size() ? b[i] : 0;
    c[i] = (x + p - y) % p;
  }
  trim(c);
  return c;
}

// Quotient and remainder of a by b.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  Poly quot(a.size() >= b.size() ? a.size() - db : 0, 0);
  while (a.size() >= b.size()) {
    const std::uint32_t factor =
        static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.back()) * lead_inv % p);
    const std::size_t shift = a.size() - 1 - db;
    quot[shift] = factor;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = static_cast<std::uint64_t>(factor) * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

Poly unpack(std::uint32_t v, std::uint32_t p, std::uint32_t k) {
  Poly c(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    c[i] = v % p;
    v /= p;
  }
  return c;
}

std::uint32_t pack(const Poly& c, std::uint32_t p, std::uint32_t k) {
  std::uint32_t v = 0;
  for (std::uint32_t i = k; i-- > 0;) v = v * p + (i < c.size() ? c[i] : 0);
  return v;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;  // q itself is prime
  std::uint32_t k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1 || p > 0xffffffffu) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), k);
}

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(p, static_cast<std::uint32_t>(d));
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = unpack(static_cast<std::uint32_t>(low), p, static_cast<std::uint32_t>(d));
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FiniteField make_field(std::uint32_t p, std::uint32_t k, std::uint32_t max_order) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw std::invalid_argument("field degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > max_order) {
      throw std::invalid_argument("field order " + std::to_string(p) + "^" + std::to_string(k) +
                                  " exceeds the configured maximum " + std::to_string(max_order));
    }
  }

  auto d = std::make_shared<detail::FieldData>();
  d->p = p;
  d->k = k;
  d->q = static_cast<std::uint32_t>(q);

  if (k == 1) {
    d->modulus = {0, 1};
  } else {
    for (std::uint32_t low = 0; low < q; ++low) {
      Poly m = unpack(low, p, k);
      m.push_back(1);
      if (is_irreducible(m, p)) {
        d->modulus = std::move(m);
        break;
      }
    }
  }

  FiniteField untabled{d};
  if (q <= FiniteField::kTableLimit) {
    const std::uint32_t n = d->q;
    d->add.resize(n * n);
    d->mul.resize(n * n);
    d->neg.resize(n);
    d->inv.resize(n, 0);
    for (std::uint32_t a = 0; a < n; ++a) {
      d->neg[a] = untabled.neg_slow(FieldElement(static_cast<std::uint16_t>(a))).value();
      for (std::uint32_t b = 0; b < n; ++b) {
        const FieldElement fa(static_cast<std::uint16_t>(a)), fb(static_cast<std::uint16_t>(b));
        d->add[a * n + b] = untabled.add_slow(fa, fb).value();
        d->mul[a * n + b] = untabled.mul_slow(fa, fb).value();
      }
    }
    for (std::uint32_t a = 1; a < n; ++a) {
      for (std::uint32_t b = 1; b < n; ++b) {
        if (d->mul[a * n + b] == 1) {
          d->inv[a] = static_cast<std::uint16_t>(b);
          break;
        }
      }
    }
  }
  return FiniteField{std::move(d)};
}

FiniteField parse_field(std::string_view spec, std::uint32_t max_order) {
  auto parse_uint = [&](std::string_view s) -> std::uint64_t {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw std::invalid_argument("malformed field order '" + std::string(spec) + "'");
    }
    return v;
  };
  const auto caret = spec.find('^');
  if (caret != std::string_view::npos) {
    const auto p = parse_uint(spec.substr(0, caret));
    const auto k = parse_uint(spec.substr(caret + 1));
    if (p > 0xffffffffu || k > 64) throw std::invalid_argument("field order out of range");
    return make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k), max_order);
  }
  const auto q = parse_uint(spec);
  const auto pk = prime_power(q);
  if (!pk) throw std::invalid_argument("field order " + std::string(spec) + " is not a prime power");
  return make_field(pk->first, pk->second, max_order);
}

FieldElement FiniteField::element(std::uint32_t index) const {
  if (index >= d_->q) throw std::out_of_range("field element index out of range");
  return FieldElement(static_cast<std::uint16_t>(index));
}

std::vector<FieldElement> FiniteField::elements() const {
  std::vector<FieldElement> out;
  out.reserve(d_->q);
  for (std::uint32_t i = 0; i < d_->q; ++i) out.emplace_back(static_cast<std::uint16_t>(i));
  return out;
}

FieldElement FiniteField::from_int(std::int64_t n) const {
  const std::int64_t p = d_->p;
  std::int64_t r = n % p;
  if (r < 0) r += p;
  return FieldElement(static_cast<std::uint16_t>(r));
}

std::vector<std::uint32_t> FiniteField::coeffs(FieldElement a) const { return unpack(a.value(), d_->p, d_->k); }

FieldElement FiniteField::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() > d_->k) throw std::invalid_argument("too many coefficients for field element");
  Poly v(c.begin(), c.end());
  for (auto& x : v) x %= d_->p;
  return FieldElement(static_cast<std::uint16_t>(pack(v, d_->p, d_->k)));
}

FieldElement FiniteField::add_slow(FieldElement a, FieldElement b) const {
  if (d_->k == 1) return FieldElement(static_cast<std::uint16_t>((a.value() + b.value()) % d_->p));
  if (d_->p == 2) return FieldElement(static_cast<std::uint16_t>(a.value() ^ b.value()));
  std::uint32_t x = a.value(), y = b.value(), out = 0, place = 1;
  for (std::uint32_t i = 0; i < d_->k; ++i) {
    out += ((x % d_->p + y % d_->p) % d_->p) * place;
    x /= d_->p;
    y /= d_->p;
    place *= d_->p;
  }
  return FieldElement(static_cast<std::uint16_t>(out));
}

FieldElement FiniteField::neg_slow(FieldElement a) const {
  if (d_->k == 1) return FieldElement(static_cast<std::uint16_t>((d_->p - a.value()) % d_->p));
  if (d_->p == 2) return a;
  std::uint32_t x = a.value(), out = 0, place = 1;
  for (std::uint32_t i = 0; i < d_->k; ++i) {
    out += ((d_->p - x % d_->p) % d_->p) * place;
    x /= d_->p;
    place *= d_->p;
  }
  return FieldElement(static_cast<std::uint16_t>(out));
}

FieldElement FiniteField::mul_slow(FieldElement a, FieldElement b) const {
  if (d_->k == 1) {
    return FieldElement(static_cast<std::uint16_t>(static_cast<std::uint64_t>(a.value()) * b.value() % d_->p));
  }
  Poly prod = poly_mul(unpack(a.value(), d_->p, d_->k), unpack(b.value(), d_->p, d_->k), d_->p);
  return FieldElement(static_cast<std::uint16_t>(pack(poly_mod(std::move(prod), d_->modulus, d_->p), d_->p, d_->k)));
}

FieldElement FiniteField::pow(FieldElement a, std::uint64_t e) const {
  FieldElement result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

FieldElement FiniteField::inv(FieldElement a) const {
  if (a.is_zero()) throw std::domain_error("division by zero in " + name());
  if (!d_->inv.empty()) return FieldElement{d_->inv[a.value()]};
  return pow(a, d_->q - 2);
}

FieldElement FiniteField::inv_euclid(FieldElement a) const {
  if (a.is_zero()) throw std::domain_error("division by zero in " + name());
  const std::uint32_t p = d_->p;
  Poly r0 = d_->modulus, r1 = unpack(a.value(), p, d_->k);
  trim(r1);
  Poly s0, s1 = {1};
  while (!r1.empty()) {
    auto [quot, rem] = poly_divmod(r0, r1, p);
    Poly s2 = poly_sub(s0, poly_mul(quot, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant; normalise s0 by it.
  const std::uint32_t scale = inv_mod(r0[0], p);
  for (auto& c : s0) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * scale % p);
  return FieldElement(static_cast<std::uint16_t>(pack(poly_mod(s0, d_->modulus, p), p, d_->k)));
}

std::string FiniteField::to_string(FieldElement a) const {
  if (d_->k == 1) return std::to_string(a.value());
  if (a.is_zero()) return "0";
  const Poly c = unpack(a.value(), d_->p, d_->k);
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
    if (i >= 1) out += 'x';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out;
}

FieldElement FiniteField::parse(std::string_view text) const {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') s += ch;
  }
  auto fail = [&]() -> FieldElement {
    throw std::invalid_argument("cannot parse '" + std::string(text) + "' as an element of " + name());
  };
  if (s.empty()) return fail();
  auto to_uint = [&](std::string_view v, std::uint64_t& out) {
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    return ec == std::errc{} && ptr == v.data() + v.size() && !v.empty();
  };
  if (d_->k == 1) {
    bool negative = s[0] == '-';
    std::uint64_t v = 0;
    if (!to_uint(std::string_view(s).substr(negative ? 1 : 0), v)) return fail();
    std::int64_t signed_v = static_cast<std::int64_t>(v % d_->p);
    return from_int(negative ? -signed_v : signed_v);
  }
  Poly acc(d_->k, 0);
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('+', start);
    if (end == std::string::npos) end = s.size();
    std::string_view term = std::string_view(s).substr(start, end - start);
    if (term.empty()) return fail();
    std::uint64_t coeff = 1, exponent = 0;
    const auto xpos = term.find('x');
    if (xpos == std::string_view::npos) {
      if (!to_uint(term, coeff)) return fail();
    } else {
      if (xpos > 0 && !to_uint(term.substr(0, xpos), coeff)) return fail();
      auto rest = term.substr(xpos + 1);
      if (rest.empty()) {
        exponent = 1;
      } else if (rest[0] != '^' || !to_uint(rest.substr(1), exponent)) {
        return fail();
      }
    }
    // Reduce x^exponent modulo the modulus so inputs need not be canonical.
    Poly mono(exponent + 1, 0);
    mono[exponent] = static_cast<std::uint32_t>(coeff % d_->p);
    Poly reduced = poly_mod(std::move(mono), d_->modulus, d_->p);
    for (std::size_t i = 0; i < reduced.size(); ++i) acc[i] = (acc[i] + reduced[i]) % d_->p;
    start = end + 1;
  }
  return FieldElement(static_cast<std::uint16_t>(pack(acc, d_->p, d_->k)));
}

std::string FiniteField::name() const { return "GF(" + std::to_string(d_->q) + ")"; }

std::string FiniteField::spec() const { return std::to_string(d_->q); }

}  // namespace vfg

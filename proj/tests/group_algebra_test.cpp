#include <gtest/gtest.h>

#include <random>

#include "vfg/group_algebra.hpp"

namespace vfg {
namespace {

AlgebraElement random_element(const GroupAlgebra& alg, std::mt19937_64& rng) {
  std::vector<FieldElement> c(alg.dimension());
  for (auto& x : c) x = alg.field().element(static_cast<std::uint32_t>(rng() % alg.field().order()));
  return alg.from_coeffs(std::move(c));
}

// c[gh] += a[g] b[h], straight from the definition.
AlgebraElement naive_product(const AlgebraElement& a, const AlgebraElement& b) {
  const GroupAlgebra& alg = a.algebra();
  const FiniteField& f = alg.field();
  std::vector<FieldElement> c(alg.dimension());
  for (Elem g = 0; g < alg.dimension(); ++g)
    for (Elem h = 0; h < alg.dimension(); ++h) {
      const Elem gh = alg.group().mul(g, h);
      c[gh] = f.add(c[gh], f.mul(a.coeff(g), b.coeff(h)));
    }
  return alg.from_coeffs(std::move(c));
}

AlgebraElement element_at(const GroupAlgebra& alg, std::uint64_t code) {
  std::vector<FieldElement> c(alg.dimension());
  for (auto& x : c) {
    x = alg.field().element(static_cast<std::uint32_t>(code % alg.field().order()));
    code /= alg.field().order();
  }
  return alg.from_coeffs(std::move(c));
}

std::uint64_t brute_unit_count(const GroupAlgebra& alg) {
  const std::uint64_t total = saturating_pow(alg.field().order(), alg.dimension());
  std::uint64_t units = 0;
  for (std::uint64_t i = 0; i < total; ++i) {
    const AlgebraElement a = element_at(alg, i);
    if (augmentation(a) != alg.field().one()) continue;
    for (std::uint64_t j = 0; j < total; ++j) {
      if (naive_product(a, element_at(alg, j)) == alg.one()) {
        ++units;
        break;
      }
    }
  }
  return units;
}

TEST(GroupAlgebra, SmallProducts) {
  const GroupAlgebra a2(make_field(2, 1), cyclic(2));
  const AlgebraElement g = a2.basis(1);
  EXPECT_TRUE(((a2.one() + g) * (a2.one() + g)).is_zero());
  EXPECT_EQ(g * a2.one(), g);

  const GroupAlgebra a3(make_field(3, 1), cyclic(3));
  const AlgebraElement h = hat(a3, Subgroup::whole(cyclic(3)));
  EXPECT_TRUE((h * (a3.basis(1) - a3.one())).is_zero());
  EXPECT_TRUE((h * h).is_zero());
}

TEST(GroupAlgebra, Augmentation) {
  const GroupAlgebra alg(make_field(2, 1), symmetric(3));
  for (Elem g = 0; g < 6; ++g) {
    EXPECT_EQ(augmentation(alg.basis(g)), alg.field().one());
    EXPECT_TRUE(augmentation(alg.basis(g) - alg.one()).is_zero());
  }
  EXPECT_EQ(augmentation(alg.one() + alg.basis(1) + alg.basis(2)), alg.field().one());
}

TEST(GroupAlgebra, ProductMatchesDefinitionAndMatrix) {
  std::mt19937_64 rng(3);
  for (const char* field : {"2", "3", "4", "5", "9"}) {
    for (const char* group : {"S3", "Q8", "C2xC4", "SD16"}) {
      const GroupAlgebra alg(parse_field(field), parse_group_spec(group));
      for (int i = 0; i < 1000 / 20; ++i) {
        const AlgebraElement a = random_element(alg, rng), b = random_element(alg, rng);
        const AlgebraElement ab = a * b;
        ASSERT_EQ(ab, naive_product(a, b)) << field << " " << group;
        const Matrix m = left_regular_matrix(a);
        ASSERT_EQ(m.apply(b.coeffs()), std::vector<FieldElement>(ab.coeffs().begin(), ab.coeffs().end()));
      }
    }
  }
}

TEST(GroupAlgebra, ProductIsAssociative) {
  std::mt19937_64 rng(5);
  const GroupAlgebra alg(parse_field("4"), parse_group_spec("D4"));
  for (int i = 0; i < 200; ++i) {
    const AlgebraElement a = random_element(alg, rng), b = random_element(alg, rng), c = random_element(alg, rng);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(GroupAlgebra, MixingAlgebrasThrows) {
  const GroupAlgebra a(make_field(2, 1), cyclic(3));
  const GroupAlgebra b(make_field(3, 1), cyclic(3));
  EXPECT_THROW(a.one() * b.one(), AlgebraMismatch);
  EXPECT_THROW(a.one() + b.one(), AlgebraMismatch);
}

TEST(GroupAlgebra, Inverses) {
  const GroupAlgebra a2(make_field(2, 1), cyclic(2));
  EXPECT_FALSE(try_inverse(a2.one() + a2.basis(1)));
  EXPECT_FALSE(is_unit(a2.zero()));

  const GroupAlgebra d4(make_field(2, 1), dihedral(8));
  const AlgebraElement n = hat(d4, Subgroup::whole(dihedral(8)));
  ASSERT_TRUE((n * n).is_zero());
  EXPECT_EQ(try_inverse(d4.one() + n), d4.one() - n);

  std::mt19937_64 rng(9);
  const GroupAlgebra s3(make_field(5, 1), symmetric(3));
  int units = 0;
  for (int i = 0; i < 200; ++i) {
    const AlgebraElement u = random_element(s3, rng);
    const auto v = try_inverse(u);
    if (!v) continue;
    ++units;
    EXPECT_EQ(u * *v, s3.one());
    EXPECT_EQ(*v * u, s3.one());
  }
  EXPECT_GT(units, 60);  // about half of GF(5)[S3] is invertible
}

TEST(GroupAlgebra, UnitTesterAgreesWithBruteForce) {
  for (const char* field : {"2", "3"}) {
    const GroupAlgebra alg(parse_field(field), symmetric(3));
    UnitTester tester(alg);
    const std::uint64_t total = saturating_pow(alg.field().order(), 6);
    for (std::uint64_t i = 0; i < total; i += (field[0] == '2' ? 1 : 7)) {
      const AlgebraElement a = element_at(alg, i);
      bool brute = false;
      for (std::uint64_t j = 0; j < total && !brute; ++j) brute = naive_product(a, element_at(alg, j)) == alg.one();
      ASSERT_EQ(tester.is_unit(a.coeffs()), brute) << to_string(a);
    }
  }
}

TEST(GroupAlgebra, UnitCounts) {
  const EnumerationBudget budget;
  EXPECT_EQ(count_normalized_units(GroupAlgebra(make_field(2, 1), cyclic(2)), budget), 2u);
  EXPECT_EQ(count_normalized_units(GroupAlgebra(make_field(3, 1), cyclic(3)), budget), 9u);
  EXPECT_EQ(count_normalized_units(GroupAlgebra(make_field(2, 1), dihedral(8)), budget), 128u);
  for (const char* spec : {"C2xC2", "C3", "S3"}) {
    for (const char* field : {"2", "3"}) {
      const GroupAlgebra alg(parse_field(field), parse_group_spec(spec));
      if (saturating_pow(alg.field().order(), alg.dimension()) > 729) continue;
      EXPECT_EQ(count_normalized_units(alg, budget), brute_unit_count(alg)) << spec << " " << field;
      EXPECT_EQ(count_normalized_units(alg, budget, 3), count_normalized_units(alg, budget, 1));
    }
  }
  EXPECT_THROW(count_normalized_units(GroupAlgebra(make_field(2, 1), cyclic(16)), {100, 100}), BudgetExceeded);
}

TEST(GroupAlgebra, NormalizedCodesRoundTrip) {
  const GroupAlgebra alg(parse_field("3"), symmetric(3));
  for (std::uint64_t code : {0ull, 1ull, 17ull, 242ull}) {
    const auto c = decode_normalized(code, alg);
    EXPECT_EQ(augmentation(alg.from_coeffs(c)), alg.field().one());
    EXPECT_EQ(normalized_code(c, 3), code);
  }
  EXPECT_EQ(alg.from_coeffs(decode_normalized(0, alg)), alg.one());
}

TEST(GroupAlgebra, RelativeAugmentationIdeal) {
  const FiniteGroup g = parse_group_spec("C2xC3");
  const GroupAlgebra alg(make_field(2, 1), g);
  EXPECT_EQ(rel_aug_ideal(alg, Subgroup::trivial(g)).dimension(), 0u);
  EXPECT_EQ(rel_aug_ideal(alg, Subgroup::whole(g)).dimension(), 5u);
  EXPECT_EQ(rel_aug_ideal(alg, sylow_subgroup(g, 2)).dimension(), 3u);
  EXPECT_THROW(rel_aug_ideal(GroupAlgebra(make_field(2, 1), symmetric(3)), sylow_subgroup(symmetric(3), 2)),
               std::invalid_argument);

  // dim J(H) = |G| - [G:H], and J(H) is the kernel of the collapse.
  std::mt19937_64 rng(1);
  for (const char* spec : {"D4", "Q8", "C2xC4", "S3", "C12"}) {
    const FiniteGroup grp = parse_group_spec(spec);
    const GroupAlgebra a3(make_field(3, 1), grp);
    for (const Subgroup& h : all_subgroups(grp)) {
      if (!is_normal(h)) continue;
      const IdealBasis j = rel_aug_ideal(a3, h);
      EXPECT_EQ(j.dimension(), grp.order() - grp.order() / h.order()) << spec;
      const Quotient q = quotient(h);
      const GroupAlgebra target(a3.field(), q.group);
      for (int i = 0; i < 20; ++i) {
        const AlgebraElement x = random_element(a3, rng);
        EXPECT_EQ(j.contains(x), collapse(x, q, target).is_zero());
        for (const auto& b : j.basis()) ASSERT_TRUE(collapse(x * b, q, target).is_zero());
      }
    }
  }
}

TEST(GroupAlgebra, HatElements) {
  const GroupAlgebra a2(make_field(2, 1), cyclic(3));
  EXPECT_EQ(hat(a2, Subgroup::trivial(cyclic(3))), a2.one());
  const AlgebraElement h2 = hat(a2, Subgroup::whole(cyclic(3)));
  EXPECT_EQ(h2 * h2, h2);
  const GroupAlgebra a3(make_field(3, 1), cyclic(3));
  const AlgebraElement h3 = hat(a3, Subgroup::whole(cyclic(3)));
  EXPECT_FALSE(h3.is_zero());
  EXPECT_TRUE((h3 * h3).is_zero());
}

TEST(GroupAlgebra, Nilpotents) {
  const EnumerationBudget budget;
  EXPECT_TRUE(enumerate_nilpotents(GroupAlgebra(make_field(2, 1), cyclic(3)), budget).empty());
  const GroupAlgebra a2(make_field(2, 1), cyclic(2));
  const auto n2 = enumerate_nilpotents(a2, budget);
  ASSERT_EQ(n2.size(), 1u);
  EXPECT_EQ(n2[0], a2.one() + a2.basis(1));
  const GroupAlgebra a3(make_field(3, 1), cyclic(3));
  const auto n3 = enumerate_nilpotents(a3, budget);
  EXPECT_EQ(n3.size(), 8u);
  for (const auto& x : n3) {
    EXPECT_TRUE(augmentation(x).is_zero());
    EXPECT_TRUE(is_nilpotent(x));
  }
  // Naive oracle: x^|G| = 0.
  const GroupAlgebra s3(make_field(2, 1), symmetric(3));
  std::size_t naive = 0;
  for (std::uint64_t i = 1; i < 64; ++i) naive += power(element_at(s3, i), 6).is_zero();
  EXPECT_EQ(enumerate_nilpotents(s3, budget).size(), naive);
}

TEST(GroupAlgebra, Idempotents) {
  const EnumerationBudget budget;
  const GroupAlgebra a2(make_field(2, 1), cyclic(3));
  const auto i2 = enumerate_idempotents(a2, Subgroup::whole(cyclic(3)), budget);
  ASSERT_EQ(i2.elements.size(), 4u);
  const AlgebraElement h = hat(a2, Subgroup::whole(cyclic(3)));
  for (const auto& e : {a2.zero(), a2.one(), h, a2.one() + h}) {
    EXPECT_NE(std::find(i2.elements.begin(), i2.elements.end(), e), i2.elements.end()) << to_string(e);
  }
  EXPECT_EQ(i2.primitive_count(), 2u);

  const GroupAlgebra a3(make_field(3, 1), cyclic(2));
  const auto i3 = enumerate_idempotents(a3, Subgroup::whole(cyclic(2)), budget);
  EXPECT_EQ(i3.elements.size(), 4u);
  const AlgebraElement f = a3.field().from_int(2) * (a3.one() + a3.basis(1));
  EXPECT_NE(std::find(i3.elements.begin(), i3.elements.end(), f), i3.elements.end());
}

TEST(GroupAlgebra, FrobeniusSearchMatchesExhaustive) {
  const FiniteGroup g = parse_group_spec("C2xC3");
  const GroupAlgebra alg(make_field(5, 1), g);
  const auto full = enumerate_idempotents(alg, Subgroup::whole(g), {std::uint64_t{1} << 22, 1u << 22});
  const auto fixed = enumerate_idempotents(alg, Subgroup::whole(g), {1000, 1000});
  EXPECT_EQ(full.search_space, "exhaustive");
  EXPECT_EQ(fixed.search_space, "frobenius-fixed");
  EXPECT_EQ(full.elements.size(), fixed.elements.size());
  EXPECT_EQ(full.primitive_count(), fixed.primitive_count());
}

TEST(GroupAlgebra, FieldSummandCount) {
  EXPECT_EQ(field_summand_count(cyclic(3), make_field(2, 1)), 2u);
  EXPECT_EQ(field_summand_count(cyclic(4), make_field(3, 1)), 3u);
  EXPECT_EQ(field_summand_count(trivial_group(), make_field(5, 1)), 1u);
  EXPECT_EQ(field_summand_count(cyclic(7), make_field(2, 1)), 3u);
  EXPECT_THROW(field_summand_count(symmetric(3), make_field(5, 1)), std::invalid_argument);
  EXPECT_THROW(field_summand_count(cyclic(4), make_field(2, 1)), std::invalid_argument);
  const auto degrees = summand_degrees(Subgroup::whole(cyclic(7)), make_field(2, 1));
  EXPECT_EQ(degrees, (std::vector<std::size_t>{1, 3, 3}));
}

TEST(GroupAlgebra, TermsRoundTrip) {
  std::mt19937_64 rng(2);
  const GroupAlgebra alg(parse_field("4"), symmetric(3));
  for (int i = 0; i < 50; ++i) {
    const AlgebraElement a = random_element(alg, rng);
    EXPECT_EQ(from_terms(alg, to_terms(a)), a);
  }
  EXPECT_EQ(to_string(alg.zero()), "0");
  EXPECT_THROW(from_terms(alg, {{"nope", "1"}}), std::invalid_argument);
}

}  // namespace
}  // namespace vfg

#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "vfg/unit_group.hpp"

namespace vfg {
namespace {

const EnumerationBudget kBudget;

UnitGroup units_of(const char* field, const char* group, std::size_t cap = 4096) {
  return enumerate_normalized_units(GroupAlgebra(parse_field(field), parse_group_spec(group)), kBudget, cap);
}

// A finite group is nilpotent iff elements of coprime order commute.
bool coprime_orders_commute(const UnitGroup& v) {
  std::vector<std::size_t> ord(v.order());
  for (UnitGroup::Index i = 0; i < v.order(); ++i) ord[i] = v.element_order(i);
  for (UnitGroup::Index i = 0; i < v.order(); ++i)
    for (UnitGroup::Index j = 0; j < v.order(); ++j)
      if (std::gcd(ord[i], ord[j]) == 1 && v.mul(i, j) != v.mul(j, i)) return false;
  return true;
}

// (x, y, ..., y) in the algebra until 1 or a repeat.
bool naive_engel_pair(const AlgebraElement& x, const AlgebraElement& y) {
  std::vector<AlgebraElement> seen;
  AlgebraElement c = x;
  while (true) {
    if (c == x.algebra().one()) return true;
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) return false;
    seen.push_back(c);
    c = unit_commutator(c, y);
  }
}

TEST(UnitGroup, SmallOrders) {
  EXPECT_EQ(units_of("2", "C2").order(), 2u);
  const UnitGroup v = units_of("3", "C3");
  EXPECT_EQ(v.order(), 9u);
  EXPECT_TRUE(v.is_abelian());
  for (UnitGroup::Index i = 1; i < v.order(); ++i) EXPECT_EQ(v.element_order(i), 3u);
  EXPECT_EQ(units_of("2", "D4").order(), 128u);
  EXPECT_EQ(units_of("2", "C2xC3").order(), 24u);
}

TEST(UnitGroup, IndexingAndTable) {
  const UnitGroup with = units_of("3", "S3");
  const UnitGroup without = units_of("3", "S3", 0);
  ASSERT_TRUE(with.has_table());
  ASSERT_FALSE(without.has_table());
  EXPECT_EQ(with.code(UnitGroup::kIdentity), 0u);
  for (UnitGroup::Index i = 0; i < with.order(); ++i) {
    EXPECT_EQ(with.index_of_checked(with.element(i)), i);
    EXPECT_EQ(with.mul(i, with.inv(i)), UnitGroup::kIdentity);
    for (UnitGroup::Index j = 0; j < with.order(); j += 7) {
      ASSERT_EQ(with.mul(i, j), without.mul(i, j));
      ASSERT_EQ(with.element(with.mul(i, j)), with.element(i) * with.element(j));
    }
  }
  EXPECT_FALSE(with.index_of(with.algebra().zero().coeffs()));
}

TEST(UnitGroup, ParallelEnumerationMatchesSerial) {
  const GroupAlgebra alg(parse_field("4"), symmetric(3));
  EXPECT_EQ(normalized_unit_codes(alg, kBudget, 1), normalized_unit_codes(alg, kBudget, 4));
}

TEST(UnitGroup, EngelPairBasics) {
  const UnitGroup v = units_of("2", "S3");
  for (UnitGroup::Index y = 0; y < v.order(); ++y) {
    const EngelTrace t = engel_pair_test(v, UnitGroup::kIdentity, y);
    EXPECT_TRUE(t.holds);
    EXPECT_EQ(t.depth, 0u);
  }
  for (UnitGroup::Index x = 0; x < v.order(); ++x) {
    for (UnitGroup::Index y = 0; y < v.order(); ++y) {
      const EngelTrace t = engel_pair_test(v, x, y);
      if (v.mul(x, y) == v.mul(y, x)) {
        EXPECT_TRUE(t.holds);
        EXPECT_LE(t.depth, 1u);
      }
      EXPECT_EQ(t.holds, naive_engel_pair(v.element(x), v.element(y)));
    }
  }
}

TEST(UnitGroup, EngelVerdicts) {
  const EngelVerdict c3 = engel_group_test(units_of("3", "C3"));
  EXPECT_TRUE(c3.engel);
  EXPECT_LE(c3.max_depth, 1u);

  const UnitGroup s3 = units_of("2", "S3");
  const EngelVerdict v = engel_group_test(s3);
  ASSERT_FALSE(v.engel);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(replay_engel_witness(*v.witness));
  EXPECT_FALSE(naive_engel_pair(v.witness->x, v.witness->y));
  // The witness is the least failing pair.
  const auto x = s3.index_of_checked(v.witness->x), y = s3.index_of_checked(v.witness->y);
  for (UnitGroup::Index i = 0; i <= x; ++i)
    for (UnitGroup::Index j = 0; j < (i == x ? y : s3.order()); ++j) ASSERT_TRUE(engel_pair_test(s3, i, j).holds);

  EngelWitness bad = *v.witness;
  bad.trace.back() = bad.trace.front();
  EXPECT_FALSE(replay_engel_witness(bad));
  bad = *v.witness;
  bad.y = s3.algebra().one();
  EXPECT_FALSE(replay_engel_witness(bad));

  const UnitGroup s35 = units_of("5", "S3");
  EXPECT_EQ(s35.order(), 1920u);
  const EngelVerdict v5 = engel_group_test(s35, 2);
  ASSERT_FALSE(v5.engel);
  EXPECT_TRUE(replay_engel_witness(*v5.witness));
}

TEST(UnitGroup, EngelVerdictIndependentOfJobs) {
  const UnitGroup v = units_of("3", "S3");
  const EngelVerdict a = engel_group_test(v, 1), b = engel_group_test(v, 3);
  EXPECT_EQ(a.engel, b.engel);
  EXPECT_EQ(a.max_depth, b.max_depth);
  ASSERT_EQ(a.witness.has_value(), b.witness.has_value());
  if (a.witness) EXPECT_EQ(a.witness->x, b.witness->x);
}

TEST(UnitGroup, NilpotencyClass) {
  EXPECT_EQ(nilpotency_class_of_V(units_of("2", "C2xC2")), std::optional<std::size_t>(1));
  const auto d4 = nilpotency_class_of_V(units_of("2", "D4"));
  ASSERT_TRUE(d4);
  EXPECT_GE(*d4, 2u);
  EXPECT_EQ(nilpotency_class_of_V(units_of("2", "S3")), std::nullopt);
}

TEST(UnitGroup, NilpotencyMatchesCoprimeOracle) {
  for (const char* group : {"C3", "S3", "C2xC3", "D4", "Q8", "C6"}) {
    for (const char* field : {"2", "3", "4"}) {
      const GroupAlgebra alg(parse_field(field), parse_group_spec(group));
      if (count_normalized_units(alg, kBudget) > 1024) continue;
      const UnitGroup v = enumerate_normalized_units(alg, kBudget);
      const bool nilpotent = nilpotency_class_of_V(v).has_value();
      EXPECT_EQ(nilpotent, coprime_orders_commute(v)) << group << " " << field;
      EXPECT_EQ(nilpotent, engel_group_test(v).engel) << group << " " << field;
    }
  }
}

TEST(UnitGroup, SubgroupClosure) {
  const UnitGroup v = units_of("2", "D4");
  EXPECT_EQ(subgroup_closure(v, {}).size(), 1u);
  const GroupAlgebra& alg = v.algebra();
  for (Elem g = 0; g < alg.dimension(); ++g) {
    const UnitGroup::Index i = v.index_of_checked(alg.basis(g));
    EXPECT_EQ(subgroup_closure(v, std::vector<UnitGroup::Index>{i}).size(), alg.group().element_order(g));
  }
  // Commutators of V generate a subgroup inside 1 + J(G').
  std::set<UnitGroup::Index> comms;
  for (UnitGroup::Index x = 0; x < v.order(); ++x)
    for (UnitGroup::Index y = 0; y < v.order(); ++y) comms.insert(v.commutator(x, y));
  const std::vector<UnitGroup::Index> gens(comms.begin(), comms.end());
  const IdealBasis jd = rel_aug_ideal(alg, derived_subgroup(alg.group()));
  for (UnitGroup::Index c : subgroup_closure(v, gens)) EXPECT_TRUE(jd.contains(v.element(c) - alg.one()));
}

TEST(UnitGroup, AbelianInvariants) {
  EXPECT_EQ(abelian_invariants(units_of("2", "C2xC3")), (std::vector<std::uint64_t>{2, 2, 6}));
  EXPECT_EQ(abelian_invariants(units_of("3", "C3")), (std::vector<std::uint64_t>{3, 3}));
  EXPECT_THROW(abelian_invariants(units_of("2", "S3")), std::invalid_argument);
}

TEST(UnitGroup, OnePlusSylowIdeal) {
  const UnitGroup v = units_of("2", "C2xC3");
  const GroupAlgebra& alg = v.algebra();
  const OnePlusIdeal k = one_plus_ideal_subgroup(v, rel_aug_ideal(alg, sylow_subgroup(alg.group(), 2)));
  EXPECT_EQ(k.members.size(), 8u);
  EXPECT_EQ(k.expected_order, 8u);
  EXPECT_EQ(k.p_part, 8u);
  EXPECT_TRUE(k.all_units && k.subgroup && k.normal && k.is_sylow);
  const OnePlusIdeal zero = one_plus_ideal_subgroup(v, rel_aug_ideal(alg, Subgroup::trivial(alg.group())));
  EXPECT_EQ(zero.members, std::vector<UnitGroup::Index>{UnitGroup::kIdentity});
}

TEST(UnitGroup, NaturalProjection) {
  const FiniteGroup g = parse_group_spec("C2xC3");
  const GroupAlgebra alg(make_field(2, 1), g);
  const UnitGroup v = enumerate_normalized_units(alg, kBudget);
  const Subgroup p = sylow_subgroup(g, 2);
  const Quotient q = quotient(p);
  const UnitGroup image = enumerate_normalized_units(GroupAlgebra(alg.field(), q.group), kBudget);
  const ProjectionReport r = natural_projection_check(v, image, q, rel_aug_ideal(alg, p));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.image_order, 3u);
  EXPECT_EQ(r.kernel_order, 8u);

  // G = P: the image is trivial and the kernel is all of V.
  const GroupAlgebra d4(make_field(2, 1), dihedral(8));
  const UnitGroup vd = enumerate_normalized_units(d4, kBudget);
  const Quotient whole = quotient(Subgroup::whole(dihedral(8)));
  const UnitGroup trivial = enumerate_normalized_units(GroupAlgebra(d4.field(), whole.group), kBudget);
  const ProjectionReport rd = natural_projection_check(vd, trivial, whole, rel_aug_ideal(d4, Subgroup::whole(dihedral(8))));
  EXPECT_TRUE(rd.ok());
  EXPECT_EQ(rd.kernel_order, 128u);
  EXPECT_EQ(rd.image_order, 1u);
}

TEST(UnitGroup, SampledEngel) {
  const GroupAlgebra s3(make_field(2, 1), symmetric(3));
  const EngelVerdict a = engel_group_test_sampled(s3, 500, 42, 1);
  const EngelVerdict b = engel_group_test_sampled(s3, 500, 42, 3);
  ASSERT_FALSE(a.engel);
  EXPECT_EQ(a.pairs_tested, b.pairs_tested);
  EXPECT_EQ(a.witness->x, b.witness->x);
  EXPECT_EQ(a.witness->y, b.witness->y);
  EXPECT_TRUE(replay_engel_witness(*a.witness));

  const GroupAlgebra d4(make_field(2, 1), dihedral(8));
  const EngelVerdict c = engel_group_test_sampled(d4, 500, 42, 2);
  EXPECT_TRUE(c.engel);
  EXPECT_EQ(c.pairs_tested, 500u);
  EXPECT_EQ(c.undecided, 0u);
}

TEST(UnitGroup, RandomUnitsAreNormalizedUnits) {
  const GroupAlgebra alg(parse_field("5"), parse_group_spec("Q8"));
  for (std::uint64_t s = 0; s < 50; ++s) {
    const AlgebraElement u = random_normalized_unit(alg, 7, s);
    EXPECT_TRUE(is_unit(u));
    EXPECT_EQ(augmentation(u), alg.field().one());
    EXPECT_EQ(u, random_normalized_unit(alg, 7, s));
  }
}

}  // namespace
}  // namespace vfg

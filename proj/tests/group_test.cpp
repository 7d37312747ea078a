#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "vfg/group.hpp"

namespace vfg {
namespace {

Elem label(const FiniteGroup& g, const std::string& l) {
  auto e = g.find_label(l);
  EXPECT_TRUE(e.has_value()) << l;
  return e.value_or(0);
}

// Every closed subset containing 1, by brute force over all 2^(n-1) subsets.
std::size_t brute_subgroup_count(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::size_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    ElementSet s;
    s.set(0);
    for (std::size_t i = 1; i < n; ++i)
      if (mask >> (i - 1) & 1) s.set(i);
    bool closed = true;
    for (std::size_t a = 0; a < n && closed; ++a)
      for (std::size_t b = 0; b < n && closed; ++b)
        if (s.test(a) && s.test(b) && !s.test(g.mul(Elem(a), Elem(b)))) closed = false;
    count += closed;
  }
  return count;
}

TEST(Group, ConstructorsHaveExpectedOrders) {
  EXPECT_EQ(cyclic(6).order(), 6u);
  EXPECT_TRUE(cyclic(6).is_abelian());
  EXPECT_EQ(direct_product(dihedral(8), cyclic(3)).order(), 24u);
  EXPECT_EQ(parse_group_spec("D4xC3").order(), 24u);
  EXPECT_EQ(parse_group_spec("SD16").order(), 16u);
  EXPECT_EQ(parse_group_spec("C2xC2xC2").exponent(), 2u);
  EXPECT_FALSE(quaternion8().is_abelian());
  EXPECT_EQ(symmetric(3).order(), 6u);
  EXPECT_THROW(parse_group_spec("X7"), std::invalid_argument);
  EXPECT_THROW(parse_group_spec("C0"), std::invalid_argument);
}

TEST(Group, RejectsBadTables) {
  // Latin square that is not associative: a loop of order 5.
  const std::vector<std::vector<Elem>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(FiniteGroup{loop}, std::invalid_argument);
  EXPECT_THROW(FiniteGroup({{0, 1}, {1, 1}}), std::invalid_argument);
  EXPECT_THROW(FiniteGroup({{1, 0}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(group_from_json(R"({"n": 2, "table": [[0, 1]]})"), std::invalid_argument);
  EXPECT_THROW(group_from_json("not json"), std::invalid_argument);
}

TEST(Group, JsonRoundTrip) {
  const FiniteGroup g = quaternion8();
  const FiniteGroup back = group_from_json(group_to_json(g));
  EXPECT_EQ(back.table(), g.table());
  EXPECT_EQ(back.labels(), g.labels());
}

TEST(Group, Commutators) {
  const FiniteGroup s3 = symmetric(3);
  for (Elem x = 0; x < s3.order(); ++x) EXPECT_EQ(commutator(s3, x, x), 0u);
  const Elem c = commutator(s3, label(s3, "(1,2)"), label(s3, "(1,2,3)"));
  EXPECT_EQ(s3.element_order(c), 3u);
  const FiniteGroup c6 = cyclic(6);
  for (Elem x = 0; x < 6; ++x)
    for (Elem y = 0; y < 6; ++y) EXPECT_EQ(commutator(c6, x, y), 0u);
}

TEST(Group, DerivedSubgroupAndCenter) {
  EXPECT_TRUE(derived_subgroup(cyclic(7)).is_trivial());
  const FiniteGroup s3 = symmetric(3);
  EXPECT_EQ(derived_subgroup(s3).order(), 3u);
  EXPECT_TRUE(center(s3).is_trivial());
  const FiniteGroup d4 = dihedral(8);
  const Elem r2 = label(d4, "r^2");
  EXPECT_EQ(derived_subgroup(d4).order(), 2u);
  EXPECT_TRUE(derived_subgroup(d4).contains(r2));
  EXPECT_EQ(center(d4), derived_subgroup(d4));
  EXPECT_EQ(center(cyclic(5)).order(), 5u);
}

TEST(Group, SubgroupLatticeMatchesBruteForce) {
  EXPECT_EQ(all_subgroups(cyclic(7)).size(), 2u);
  EXPECT_EQ(all_subgroups(cyclic(6)).size(), 4u);
  EXPECT_EQ(all_subgroups(symmetric(3)).size(), 6u);
  for (const char* spec : {"C8", "C2xC4", "C2xC2xC2", "D4", "Q8", "C2xC3", "C12", "D6"}) {
    const FiniteGroup g = parse_group_spec(spec);
    const auto lattice = all_subgroups(g);
    EXPECT_EQ(lattice.size(), brute_subgroup_count(g)) << spec;
    for (std::size_t i = 1; i < lattice.size(); ++i) {
      EXPECT_TRUE(lattice[i - 1].order() < lattice[i].order() ||
                  (lattice[i - 1].order() == lattice[i].order() && mask_less(lattice[i - 1].members(),
                                                                              lattice[i].members())));
    }
  }
}

TEST(Group, SylowSubgroups) {
  const FiniteGroup c6 = cyclic(6);
  EXPECT_EQ(sylow_subgroup(c6, 2).order(), 2u);
  const FiniteGroup s3 = symmetric(3);
  const Subgroup s3_3 = sylow_subgroup(s3, 3);
  EXPECT_EQ(s3_3.order(), 3u);
  EXPECT_TRUE(is_normal(s3_3));
  EXPECT_FALSE(is_normal(sylow_subgroup(s3, 2)));
  const FiniteGroup d4c3 = parse_group_spec("D4xC3");
  const Subgroup p = sylow_subgroup(d4c3, 2);
  EXPECT_EQ(p.order(), 8u);
  EXPECT_TRUE(is_normal(p));
  EXPECT_FALSE(is_abelian(p));
  EXPECT_EQ(sylow_subgroup(c6, 5).order(), 1u);
}

TEST(Group, NilpotencyClass) {
  EXPECT_EQ(nilpotency_class(cyclic(5)), std::optional<std::size_t>(1));
  EXPECT_EQ(nilpotency_class(dihedral(8)), std::optional<std::size_t>(2));
  EXPECT_EQ(nilpotency_class(parse_group_spec("SD16")), std::optional<std::size_t>(3));
  EXPECT_EQ(nilpotency_class(symmetric(3)), std::nullopt);
  EXPECT_EQ(nilpotency_class(trivial_group()), std::optional<std::size_t>(0));
}

TEST(Group, CentralComplement) {
  const auto c6 = central_p_complement(cyclic(6), 2);
  ASSERT_TRUE(c6);
  EXPECT_EQ(c6->sylow.order(), 2u);
  EXPECT_EQ(c6->complement.order(), 3u);
  const auto d4c3 = central_p_complement(parse_group_spec("D4xC3"), 2);
  ASSERT_TRUE(d4c3);
  EXPECT_EQ(d4c3->sylow.order(), 8u);
  EXPECT_EQ(d4c3->complement.order(), 3u);
  EXPECT_FALSE(central_p_complement(symmetric(3), 3));
}

TEST(Group, AbelianInvariants) {
  using V = std::vector<std::uint64_t>;
  EXPECT_EQ(abelian_invariants(parse_group_spec("C2xC2")), (V{2, 2}));
  EXPECT_EQ(abelian_invariants(cyclic(6)), (V{6}));
  EXPECT_EQ(abelian_invariants(parse_group_spec("C2xC4")), (V{2, 4}));
  EXPECT_EQ(abelian_invariants(parse_group_spec("C2xC3")), (V{6}));
  EXPECT_EQ(abelian_invariants(parse_group_spec("C2xC2xC2")), (V{2, 2, 2}));
  EXPECT_EQ(abelian_invariants(trivial_group()), V{});
}

TEST(Group, QuotientByDerivedSubgroup) {
  const FiniteGroup d4 = dihedral(8);
  const Quotient q = quotient(derived_subgroup(d4));
  EXPECT_EQ(q.group.order(), 4u);
  EXPECT_EQ(abelian_invariants(q.group), (std::vector<std::uint64_t>{2, 2}));
  for (Elem g = 0; g < d4.order(); ++g)
    for (Elem h = 0; h < d4.order(); ++h)
      EXPECT_EQ(q.coset_of[d4.mul(g, h)], q.group.mul(q.coset_of[g], q.coset_of[h]));
  EXPECT_THROW(quotient(sylow_subgroup(symmetric(3), 2)), std::invalid_argument);
}

TEST(Group, InvariantsSurviveRelabeling) {
  std::mt19937_64 rng(11);
  for (const char* spec : {"S3", "D4", "Q8", "SD16", "C2xC4", "C12"}) {
    const FiniteGroup g = parse_group_spec(spec);
    std::vector<Elem> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    const FiniteGroup h = relabel(g, perm);
    EXPECT_EQ(h.is_abelian(), g.is_abelian()) << spec;
    EXPECT_EQ(h.exponent(), g.exponent()) << spec;
    EXPECT_EQ(all_subgroups(h).size(), all_subgroups(g).size()) << spec;
    EXPECT_EQ(derived_subgroup(h).order(), derived_subgroup(g).order()) << spec;
    EXPECT_EQ(center(h).order(), center(g).order()) << spec;
    EXPECT_EQ(nilpotency_class(h), nilpotency_class(g)) << spec;
    for (Elem x = 0; x < g.order(); ++x)
      for (Elem y = 0; y < g.order(); ++y) ASSERT_EQ(h.mul(perm[x], perm[y]), perm[g.mul(x, y)]);
  }
}

TEST(Group, SemidihedralAction) {
  const FiniteGroup g = semidihedral16();
  const Elem a = 1, b = 8;
  EXPECT_EQ(g.element_order(a), 8u);
  EXPECT_EQ(g.element_order(b), 2u);
  EXPECT_EQ(g.conj(a, b), g.pow(a, 3));
}

}  // namespace
}  // namespace vfg

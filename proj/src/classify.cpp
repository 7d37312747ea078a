#include "vfg/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "vfg/parallel.hpp"
#include "vfg/random.hpp"

namespace vfg {

using nlohmann::json;

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "skipped";
}

CheckOutcome passed(std::string name, std::string reason) {
  return {std::move(name), CheckStatus::Pass, std::move(reason), std::nullopt};
}

CheckOutcome failed(std::string name, std::string reason, json witness) {
  return {std::move(name), CheckStatus::Fail, std::move(reason), std::move(witness)};
}

CheckOutcome skipped(std::string name, std::string reason) {
  return {std::move(name), CheckStatus::Skipped, std::move(reason), std::nullopt};
}

json element_to_json(const AlgebraElement& a) {
  json terms = json::array();
  for (const auto& [label, coeff] : to_terms(a)) terms.push_back(json::array({label, coeff}));
  return terms;
}

AlgebraElement element_from_json(const GroupAlgebra& algebra, const json& j) {
  std::vector<std::pair<std::string, std::string>> terms;
  for (const auto& t : j) terms.emplace_back(t.at(0).get<std::string>(), t.at(1).get<std::string>());
  return from_terms(algebra, terms);
}

json engel_witness_to_json(const EngelWitness& w) {
  json trace = json::array();
  for (const auto& c : w.trace) trace.push_back(element_to_json(c));
  return {{"x", element_to_json(w.x)},
          {"y", element_to_json(w.y)},
          {"trace", trace},
          {"cycle_start", w.cycle_start}};
}

EngelWitness engel_witness_from_json(const GroupAlgebra& algebra, const json& j) {
  EngelWitness w{element_from_json(algebra, j.at("x")), element_from_json(algebra, j.at("y")), {},
                 j.at("cycle_start").get<std::size_t>()};
  for (const auto& c : j.at("trace")) w.trace.push_back(element_from_json(algebra, c));
  return w;
}

std::string to_string(Rationale r) {
  switch (r) {
    case Rationale::Modular: return "modular";
    case Rationale::CentralTorsion: return "central-torsion";
    case Rationale::Mersenne: return "mersenne";
    case Rationale::None: return "none";
  }
  return "none";
}

Prediction predict_locally_nilpotent(const FiniteGroup& g, const FiniteField& f) {
  const std::uint32_t p = f.characteristic();
  Prediction out;
  out.modular = g.order() % p == 0;
  out.group_nilpotent = nilpotency_class(g).has_value();
  out.derived_p_group = is_p_group(derived_subgroup(g), p);
  out.torsion_central = g.is_abelian();

  MersenneClause& m = out.clause_ii;
  m.prime_field = f.is_prime_field();
  for (unsigned t = 1; t < 32; ++t) {
    if ((std::uint64_t{1} << t) - 1 == p) m.t = t;
  }
  m.exponent = g.exponent();
  m.exponent_divides = (std::uint64_t{p} * p - 1) % m.exponent == 0;
  const Subgroup z = center(g);
  m.action = true;
  for (Elem x = 0; x < g.order() && m.action; ++x) {
    if (z.contains(x)) continue;
    for (Elem a = 0; a < g.order(); ++a) {
      if (g.conj(a, x) != g.pow(a, p)) {
        m.action = false;
        break;
      }
    }
  }
  m.torsion_abelian = g.is_abelian();

  if (out.modular) {
    out.rationale = Rationale::Modular;
    out.locally_nilpotent = out.group_nilpotent && out.derived_p_group;
  } else if (out.group_nilpotent && m.torsion_abelian && out.torsion_central) {
    out.rationale = Rationale::CentralTorsion;
    out.locally_nilpotent = true;
  } else if (out.group_nilpotent && m.holds()) {
    out.rationale = Rationale::Mersenne;
    out.locally_nilpotent = true;
  } else {
    out.rationale = Rationale::None;
    out.locally_nilpotent = false;
  }
  return out;
}

json to_json(const Prediction& p) {
  const MersenneClause& m = p.clause_ii;
  return {{"locally_nilpotent", p.locally_nilpotent},
          {"rationale", to_string(p.rationale)},
          {"modular", p.modular},
          {"group_nilpotent", p.group_nilpotent},
          {"derived_p_group", p.derived_p_group},
          {"torsion_central", p.torsion_central},
          {"clause_ii",
           {{"prime_field", m.prime_field},
            {"mersenne_t", m.t ? json(*m.t) : json(nullptr)},
            {"exponent", m.exponent},
            {"exponent_divides_p2_minus_1", m.exponent_divides},
            {"action", m.action},
            {"torsion_abelian", m.torsion_abelian},
            {"holds", m.holds()}}}};
}

NilpotentEvidence find_nonzero_nilpotent(const GroupAlgebra& algebra, const EnumerationBudget& budget) {
  const FiniteGroup& g = algebra.group();
  const std::uint32_t p = algebra.field().characteristic();
  NilpotentEvidence ev;
  const std::uint64_t points = saturating_pow(algebra.field().order(), g.order());
  if (points <= std::min<std::uint64_t>(budget.max_points, std::uint64_t{1} << 16)) {
    auto all = enumerate_nilpotents(algebra, budget);
    ev.method = "enumeration";
    ev.exists = !all.empty();
    if (ev.exists) ev.example = all.front();
    return ev;
  }
  ev.method = "structure";
  if (g.order() % p == 0) {
    for (Elem x = 1; x < g.order(); ++x) {
      if (g.element_order(x) == p) {
        ev.exists = true;
        ev.example = algebra.one() - algebra.basis(x);
        return ev;
      }
    }
  }
  if (!g.is_abelian()) {
    ev.exists = true;
    for (Elem a = 1; a < g.order() && !ev.example; ++a) {
      const AlgebraElement ha = hat(algebra, generated_subgroup(g, {a}));
      const AlgebraElement am1 = algebra.basis(a) - algebra.one();
      for (Elem x = 1; x < g.order(); ++x) {
        AlgebraElement cand = ha * algebra.basis(x) * am1;
        if (!cand.is_zero()) {
          ev.example = std::move(cand);
          break;
        }
      }
    }
  }
  return ev;
}

namespace {

std::string tier_note(const CaseContext& ctx) {
  if (ctx.engel.mode == "sampled") {
    return " (Engel verdict sampled over " + std::to_string(ctx.engel.pairs_tested) + " pairs)";
  }
  return {};
}

json engel_json(const CaseContext& ctx) {
  if (!ctx.engel.witness) return nullptr;
  return engel_witness_to_json(*ctx.engel.witness);
}

AlgebraElement random_normalized(const GroupAlgebra& algebra, std::uint64_t seed, std::uint64_t stream) {
  auto rng = stream_rng(seed, stream);
  const FiniteField& f = algebra.field();
  std::vector<FieldElement> a(algebra.dimension());
  FieldElement sum;
  for (std::size_t g = 1; g < a.size(); ++g) {
    a[g] = FieldElement(static_cast<std::uint16_t>(rng() % f.order()));
    sum = f.add(sum, a[g]);
  }
  a[0] = f.sub(f.one(), sum);
  return AlgebraElement(algebra, std::move(a));
}

// Stream offsets keep the seeded families independent of each other.
constexpr std::uint64_t kCommutatorStream = 0x636f6d6dULL << 32;
constexpr std::uint64_t kOrderLawStream = 0x6f6c6177ULL << 32;
constexpr std::uint64_t kIdealStream = 0x6964616cULL << 32;

bool central_in_algebra(const AlgebraElement& e) {
  const FiniteGroup& g = e.algebra().group();
  for (Elem x = 0; x < g.order(); ++x) {
    for (Elem y = 1; y < g.order(); ++y) {
      if (e.coeff(g.conj(x, y)) != e.coeff(x)) return false;
    }
  }
  return true;
}

std::optional<std::uint64_t> try_count(const GroupAlgebra& algebra, const EnumerationBudget& budget, unsigned jobs) {
  try {
    return count_normalized_units(algebra, budget, jobs);
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

std::optional<UnitGroup> try_units(const GroupAlgebra& algebra, const CaseContext& ctx) {
  if (saturating_pow(algebra.field().order(), algebra.dimension() - 1) > ctx.budget.max_points) return std::nullopt;
  try {
    auto v = enumerate_normalized_units(algebra, ctx.budget, ctx.table_cap, ctx.jobs);
    if (!v.has_table()) return std::nullopt;
    return v;
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

std::string join_ints(const std::vector<std::uint64_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

std::vector<CheckOutcome> verify_classification(const CaseContext& ctx, const Prediction& prediction) {
  std::vector<CheckOutcome> out;
  const std::string predicted = prediction.locally_nilpotent ? "true" : "false";
  if (ctx.v_class_known) {
    const bool observed = ctx.v_class.has_value();
    if (observed == prediction.locally_nilpotent) {
      out.push_back(passed("classification", "predicted " + predicted + " via " + to_string(prediction.rationale) +
                                                 "; brute-force nilpotency agrees"));
    } else {
      out.push_back(failed("classification", "predicted " + predicted + ", brute force says " + (observed ? "true" : "false"),
                           {{"predicted", prediction.locally_nilpotent}, {"observed", observed}, {"engel", engel_json(ctx)}}));
    }
  } else if (!ctx.engel.engel) {
    if (!prediction.locally_nilpotent) {
      out.push_back(passed("classification", "predicted false; sampled non-Engel pair refutes nilpotency"));
    } else {
      out.push_back(failed("classification", "predicted true but a non-Engel pair was found", engel_json(ctx)));
    }
  } else if (prediction.locally_nilpotent) {
    out.push_back(passed("classification", "predicted true; no Engel counterexample in " +
                                               std::to_string(ctx.engel.pairs_tested) + " sampled pairs (probabilistic)"));
  } else {
    out.push_back(skipped("classification", "sampled tier: predicted false but no counterexample in " +
                                                std::to_string(ctx.engel.pairs_tested) + " pairs"));
  }

  if (ctx.v_class_known) {
    const bool nilpotent = ctx.v_class.has_value();
    if (ctx.engel.engel == nilpotent) {
      out.push_back(passed("engel_nilpotent_agreement", nilpotent ? "Engel and nilpotent" : "neither Engel nor nilpotent"));
    } else {
      out.push_back(failed("engel_nilpotent_agreement",
                           std::string("Engel ") + (ctx.engel.engel ? "true" : "false") + " but nilpotent " +
                               (nilpotent ? "true" : "false"),
                           engel_json(ctx)));
    }
  } else {
    out.push_back(skipped("engel_nilpotent_agreement", "budget: nilpotency class needs the exhaustive tier"));
  }

  if (ctx.engel.witness) {
    if (replay_engel_witness(*ctx.engel.witness)) {
      out.push_back(passed("engel_witness_replay", "witness replays to a 1-free cycle of length " +
                                                       std::to_string(ctx.engel.witness->trace.size() -
                                                                      ctx.engel.witness->cycle_start)));
    } else {
      out.push_back(failed("engel_witness_replay", "recorded witness does not replay", engel_json(ctx)));
    }
  }
  return out;
}

std::vector<CheckOutcome> verify_p_regular_subgroups(const CaseContext& ctx) {
  const GroupAlgebra& alg = ctx.algebra;
  const FiniteGroup& g = alg.group();
  const std::uint32_t p = alg.field().characteristic();
  if (!ctx.engel.engel) return {skipped("p_regular", "not-Engel: V(FG) has a non-Engel pair")};
  std::vector<Subgroup> lattice;
  try {
    lattice = all_subgroups(g);
  } catch (const std::length_error& e) {
    return {skipped("p_regular", std::string("budget: ") + e.what())};
  }
  std::size_t admissible = 0, idempotent_skips = 0, idempotents_checked = 0;
  std::optional<CheckOutcome> abelian_fail, normal_fail, idem_fail;
  for (const Subgroup& h : lattice) {
    if (h.order() % p == 0) continue;
    ++admissible;
    if (!abelian_fail && !is_abelian(h)) {
      abelian_fail = failed("p_regular.abelian", "H = " + describe(h) + " is not abelian", {{"H", describe(h)}});
    }
    if (!normal_fail) {
      for (const Subgroup& k : lattice) {
        if (k.is_subgroup_of(h) && !is_normal(k)) {
          normal_fail = failed("p_regular.subgroups_normal", "a subgroup of H = " + describe(h) + " is not normal in G",
                               {{"H", describe(h)}, {"K", describe(k)}});
          break;
        }
      }
    }
    if (idem_fail) continue;
    try {
      const IdempotentList idem = enumerate_idempotents(alg, h, ctx.budget);
      idempotents_checked += idem.elements.size();
      for (const auto& e : idem.elements) {
        if (!central_in_algebra(e)) {
          idem_fail = failed("p_regular.idempotents_central", "an idempotent of FH is not central in FG",
                             {{"H", describe(h)}, {"e", element_to_json(e)}});
          break;
        }
      }
    } catch (const BudgetExceeded&) {
      ++idempotent_skips;
    }
  }
  const std::string scope = std::to_string(admissible) + " admissible subgroups" + tier_note(ctx);
  std::vector<CheckOutcome> out;
  out.push_back(abelian_fail ? *abelian_fail : passed("p_regular.abelian", scope));
  out.push_back(normal_fail ? *normal_fail : passed("p_regular.subgroups_normal", scope));
  if (idem_fail) {
    out.push_back(*idem_fail);
  } else if (idempotent_skips == admissible) {
    out.push_back(skipped("p_regular.idempotents_central", "budget: idempotent enumeration"));
  } else {
    std::string reason = std::to_string(idempotents_checked) + " idempotents over " +
                         std::to_string(admissible - idempotent_skips) + " subgroups";
    if (idempotent_skips) reason += ", " + std::to_string(idempotent_skips) + " subgroups over budget";
    out.push_back(passed("p_regular.idempotents_central", reason + tier_note(ctx)));
  }
  return out;
}

std::vector<CheckOutcome> verify_nilpotent_elements(const CaseContext& ctx) {
  const GroupAlgebra& alg = ctx.algebra;
  const FiniteGroup& g = alg.group();
  const std::uint32_t p = alg.field().characteristic();
  const NilpotentEvidence ev = find_nonzero_nilpotent(alg, ctx.budget);
  if (!ev.exists) {
    return {skipped("nilpotent_elements", "not-applicable: FG has no nonzero nilpotent elements (" + ev.method + ")")};
  }
  if (!ctx.engel.engel) return {skipped("nilpotent_elements", "not-applicable: V(FG) is not Engel")};
  std::vector<CheckOutcome> out;
  if (ctx.v_class_known) {
    if (ctx.v_class) {
      out.push_back(passed("nilpotent_elements.v_nilpotent", "class " + std::to_string(*ctx.v_class)));
    } else {
      out.push_back(failed("nilpotent_elements.v_nilpotent", "lower central series of V stalls above 1", engel_json(ctx)));
    }
  } else {
    out.push_back(skipped("nilpotent_elements.v_nilpotent", "budget: nilpotency class needs the exhaustive tier"));
  }
  const Subgroup sp = sylow_subgroup(g, p);
  const Subgroup gp = derived_subgroup(g);
  if (!sp.is_trivial()) {
    out.push_back(passed("nilpotent_elements.sylow_nontrivial", "|Syl_p(G)| = " + std::to_string(sp.order())));
  } else {
    out.push_back(failed("nilpotent_elements.sylow_nontrivial", "Syl_p(G) is trivial", {{"p", p}}));
  }
  if (gp.is_subgroup_of(sp)) {
    out.push_back(passed("nilpotent_elements.derived_in_sylow", "|G'| = " + std::to_string(gp.order())));
  } else {
    out.push_back(failed("nilpotent_elements.derived_in_sylow", "G' is not inside Syl_p(G)",
                         {{"G'", describe(gp)}, {"P", describe(sp)}}));
  }
  if (auto pc = central_p_complement(g, p)) {
    out.push_back(passed("nilpotent_elements.central_complement", "G = P x A with |A| = " + std::to_string(pc->complement.order())));
  } else {
    out.push_back(failed("nilpotent_elements.central_complement", "G is not Syl_p(G) x A with A central", {{"P", describe(sp)}}));
  }
  return out;
}

std::vector<CheckOutcome> verify_structure(const CaseContext& ctx) {
  const GroupAlgebra& alg = ctx.algebra;
  const FiniteGroup& g = alg.group();
  const FiniteField& f = alg.field();
  const std::uint32_t p = f.characteristic();
  const Subgroup gp = derived_subgroup(g);
  const Subgroup sp = sylow_subgroup(g, p);
  if (!is_p_group(gp, p)) return {skipped("structure", "not-applicable: G' is not a p-group")};
  if (!is_normal(sp)) return {skipped("structure", "not-applicable: Syl_p(G) is not normal")};
  if (!ctx.engel.engel) return {skipped("structure", "not-applicable: V(FG) is not Engel")};

  std::vector<CheckOutcome> out;
  const IdealBasis jd = rel_aug_ideal(alg, gp);
  const IdealBasis jp = rel_aug_ideal(alg, sp);

  // (i) commutators of V lie in 1 + J(G').
  if (ctx.units) {
    const UnitGroup& v = *ctx.units;
    std::vector<char> inside(v.order(), 0);
    std::vector<FieldElement> z(alg.dimension());
    for (UnitGroup::Index i = 0; i < v.order(); ++i) {
      auto c = v.coeffs(i);
      std::copy(c.begin(), c.end(), z.begin());
      z[0] = f.sub(z[0], f.one());
      inside[i] = jd.echelon().contains(z);
    }
    std::optional<std::pair<UnitGroup::Index, UnitGroup::Index>> bad;
    for (UnitGroup::Index x = 0; x < v.order() && !bad; ++x) {
      for (UnitGroup::Index y = 0; y < v.order(); ++y) {
        if (!inside[v.commutator(x, y)]) {
          bad = std::make_pair(x, y);
          break;
        }
      }
    }
    if (bad) {
      out.push_back(failed("structure.commutators", "a commutator of V lies outside 1 + J(G')",
                           {{"x", element_to_json(v.element(bad->first))},
                            {"y", element_to_json(v.element(bad->second))},
                            {"commutator", element_to_json(v.element(v.commutator(bad->first, bad->second)))}}));
    } else {
      out.push_back(passed("structure.commutators", "all " + std::to_string(std::uint64_t{v.order()} * v.order()) +
                                                     " commutators lie in 1 + J(G')"));
    }
  } else {
    const std::size_t chunks = default_chunks(ctx.jobs);
    std::vector<std::optional<std::uint64_t>> first(chunks);
    std::vector<std::optional<json>> witness(chunks);
    parallel_chunks(ctx.samples, chunks, ctx.jobs, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
      for (std::uint64_t i = lo; i < hi; ++i) {
        const AlgebraElement x = random_normalized_unit(alg, ctx.seed, kCommutatorStream + 2 * i);
        const AlgebraElement y = random_normalized_unit(alg, ctx.seed, kCommutatorStream + 2 * i + 1);
        const AlgebraElement z = unit_commutator(x, y) - alg.one();
        if (!jd.contains(z)) {
          first[c] = i;
          witness[c] = json{{"x", element_to_json(x)}, {"y", element_to_json(y)}, {"sample", i}};
          return;
        }
      }
    });
    auto it = std::find_if(first.begin(), first.end(), [](const auto& o) { return o.has_value(); });
    if (it != first.end()) {
      out.push_back(failed("structure.commutators", "a sampled commutator lies outside 1 + J(G')",
                           *witness[static_cast<std::size_t>(it - first.begin())]));
    } else {
      out.push_back(passed("structure.commutators", std::to_string(ctx.samples) +
                                                     " sampled commutators lie in 1 + J(G'), zero violations"));
    }
  }

  // (i) 1 + J(P) is the Sylow p-subgroup of V.
  if (ctx.units) {
    const OnePlusIdeal k = one_plus_ideal_subgroup(*ctx.units, jp);
    const std::string detail = "|1+J(P)| = " + std::to_string(k.members.size()) + ", q^dim = " +
                               std::to_string(k.expected_order) + ", p-part of |V| = " + std::to_string(k.p_part);
    if (k.all_units && k.subgroup && k.normal && k.is_sylow) {
      out.push_back(passed("structure.sylow", detail + ", normal"));
    } else {
      out.push_back(failed("structure.sylow", detail,
                           {{"all_units", k.all_units}, {"subgroup", k.subgroup}, {"normal", k.normal},
                            {"is_sylow", k.is_sylow}}));
    }
  } else if (ctx.unit_count) {
    const std::uint64_t expected = saturating_pow(f.order(), jp.dimension());
    const std::uint64_t ppart = prime_part(*ctx.unit_count, p);
    // Every element 1 + z with z in J(P) must be a unit.
    std::optional<json> bad;
    const std::uint64_t probes = std::min<std::uint64_t>(ctx.samples, 2000);
    UnitTester tester(alg);
    for (std::uint64_t i = 0; i < probes && !bad; ++i) {
      auto rng = stream_rng(ctx.seed, kIdealStream + i);
      AlgebraElement u = alg.one();
      for (const auto& b : jp.basis()) {
        u += FieldElement(static_cast<std::uint16_t>(rng() % f.order())) * b;
      }
      if (!tester.is_unit(u.coeffs())) bad = json{{"element", element_to_json(u)}};
    }
    if (bad) {
      out.push_back(failed("structure.sylow", "an element of 1 + J(P) is not a unit", *bad));
    } else if (expected == ppart) {
      out.push_back(passed("structure.sylow", "q^dim J(P) = " + std::to_string(expected) +
                                                   " equals the p-part of the counted |V|; " + std::to_string(probes) +
                                                   " sampled elements of 1 + J(P) are units"));
    } else {
      out.push_back(failed("structure.sylow", "q^dim J(P) = " + std::to_string(expected) + " but p-part of |V| is " +
                                                   std::to_string(ppart),
                           {{"unit_count", *ctx.unit_count}}));
    }
  } else {
    out.push_back(skipped("structure.sylow", "budget: |V| not enumerated"));
  }

  // (ii) q-Sylow subgroups are central for q != p.
  std::vector<Elem> d_gens;
  bool central = true;
  std::string noncentral;
  for (std::uint32_t r : prime_divisors(g.order())) {
    if (r == p) continue;
    const Subgroup s = sylow_subgroup(g, r);
    for (Elem x : s.elements()) d_gens.push_back(x);
    if (!is_central(s)) {
      central = false;
      noncentral = describe(s);
    }
  }
  if (central) {
    out.push_back(passed("structure.central_sylows", "every q-Sylow subgroup with q != p is central"));
  } else {
    out.push_back(failed("structure.central_sylows", "a q-Sylow subgroup is not central", {{"sylow", noncentral}}));
  }

  // (iii) G = P x D.
  const Subgroup d = generated_subgroup(g, d_gens);
  const bool direct = (sp.members() & d.members()).count() == 1 && sp.order() * d.order() == g.order() &&
                      is_normal(sp) && is_normal(d) && commutator_subgroup(sp, d).is_trivial();
  if (direct) {
    out.push_back(passed("structure.direct_product", "G = P x D with |P| = " + std::to_string(sp.order()) +
                                             ", |D| = " + std::to_string(d.order())));
  } else {
    out.push_back(failed("structure.direct_product", "G is not the direct product P x D", {{"P", describe(sp)}, {"D", describe(d)}}));
  }

  // (v) V(F[G/P]) and V(FD) agree; n summands of FD.
  try {
    if (!is_abelian(d)) throw std::invalid_argument("D is not abelian");
    const auto degrees = summand_degrees(d, f);
    const std::size_t n = degrees.size();
    std::uint64_t formula = 1;
    for (auto deg : degrees) formula *= saturating_pow(f.order(), deg) - 1;
    formula /= f.order() - 1;
    const Quotient q = quotient(sp);
    const GroupAlgebra alg_q(f, q.group);
    const GroupAlgebra alg_d(f, as_group(d, "D").group);
    const auto count_q = try_count(alg_q, ctx.budget, ctx.jobs);
    const auto count_d = try_count(alg_d, ctx.budget, ctx.jobs);
    if (!count_q || !count_d) {
      out.push_back(skipped("structure.quotient_units", "budget: V(F[G/P]) or V(FD) not enumerable; n = " + std::to_string(n)));
    } else {
      std::string reason = "|V(F[G/P])| = |V(FD)| = " + std::to_string(*count_d) + " = prod (q^d_i - 1)/(q - 1); n = " +
                           std::to_string(n);
      bool ok = *count_q == *count_d && *count_d == formula;
      json w = {{"V_FGP", *count_q}, {"V_FD", *count_d}, {"formula", formula}, {"n", n}};
      auto vq = try_units(alg_q, ctx);
      auto vd = try_units(alg_d, ctx);
      if (vq && vd) {
        const auto iq = abelian_invariants(*vq);
        const auto id = abelian_invariants(*vd);
        w["invariants_FGP"] = iq;
        w["invariants_FD"] = id;
        ok = ok && iq == id;
        reason += "; invariants " + join_ints(id);
      }
      if (ok) {
        out.push_back(passed("structure.quotient_units", reason));
      } else {
        out.push_back(failed("structure.quotient_units", "V(F[G/P]) and V(FD) disagree", w));
      }
    }
    try {
      const IdempotentList idem = enumerate_idempotents(alg_d, Subgroup::whole(alg_d.group()), ctx.budget);
      if (idem.primitive_count() == n) {
        out.push_back(passed("structure.field_summands", "n = " + std::to_string(n) + " orbits = primitive idempotents of FD"));
      } else {
        out.push_back(failed("structure.field_summands", "orbit count differs from primitive idempotent count",
                             {{"orbits", n}, {"primitive_idempotents", idem.primitive_count()}}));
      }
    } catch (const BudgetExceeded&) {
      out.push_back(skipped("structure.field_summands", "budget: idempotents of FD; n = " + std::to_string(n)));
    }
  } catch (const std::invalid_argument& e) {
    out.push_back(failed("structure.quotient_units", e.what(), {{"D", describe(d)}}));
  }
  return out;
}

std::vector<CheckOutcome> verify_nilpotency_criterion(const CaseContext& ctx) {
  const GroupAlgebra& alg = ctx.algebra;
  const FiniteGroup& g = alg.group();
  const FiniteField& f = alg.field();
  const std::uint32_t p = f.characteristic();
  if (g.order() % p != 0) return {skipped("criterion", "not-applicable: non-modular")};

  std::vector<CheckOutcome> out;
  const bool rhs = nilpotency_class(g).has_value() && is_p_group(derived_subgroup(g), p);
  std::optional<bool> lhs;
  if (ctx.v_class_known) {
    lhs = ctx.v_class.has_value();
  } else if (!ctx.engel.engel) {
    lhs = false;
  }
  if (!lhs) {
    out.push_back(skipped("criterion.biconditional", "sampled tier: nilpotency of V undecided"));
  } else if (*lhs == rhs) {
    out.push_back(passed("criterion.biconditional", std::string("V nilpotent and (G nilpotent, G' p-group) are both ") +
                                                         (rhs ? "true" : "false")));
  } else {
    out.push_back(failed("criterion.biconditional", std::string("V nilpotent is ") + (*lhs ? "true" : "false") +
                                                         " but the group condition is " + (rhs ? "true" : "false"),
                         engel_json(ctx)));
  }

  if (!rhs) {
    out.push_back(skipped("criterion.projection", "not-applicable: G is not nilpotent with G' a p-group"));
    return out;
  }
  if (!ctx.units) {
    out.push_back(skipped("criterion.projection", "budget: V(FG) not tabulated"));
    return out;
  }
  const Subgroup sp = sylow_subgroup(g, p);
  const Quotient q = quotient(sp);
  const GroupAlgebra alg_q(f, q.group);
  auto image = try_units(alg_q, ctx);
  if (!image) {
    out.push_back(skipped("criterion.projection", "budget: V(F[G/P]) not tabulated"));
    return out;
  }
  const ProjectionReport r = natural_projection_check(*ctx.units, *image, q, rel_aug_ideal(alg, sp));
  json w = {{"onto", r.onto},
            {"kernel_matches", r.kernel_matches},
            {"order_law", r.order_law},
            {"kernel_order", r.kernel_order},
            {"image_order", r.image_order}};
  bool ok = r.ok() && r.quotient_invariants.has_value();
  std::string reason = "V/(1+J(P)) -> V(F[G/P]) onto with kernel 1+J(P), " + std::to_string(ctx.units->order()) +
                       " = " + std::to_string(r.kernel_order) + " * " + std::to_string(r.image_order);
  if (r.quotient_invariants) {
    w["quotient_invariants"] = *r.quotient_invariants;
    w["image_invariants"] = *r.image_invariants;
    reason += "; invariants " + join_ints(*r.quotient_invariants);
    // The torsion-free factor is trivial for finite G, so the quotient must
    // match V(FD) itself.
    std::vector<Elem> d_gens;
    for (std::uint32_t r2 : prime_divisors(g.order())) {
      if (r2 == p) continue;
      for (Elem x : sylow_subgroup(g, r2).elements()) d_gens.push_back(x);
    }
    const GroupAlgebra alg_d(f, as_group(generated_subgroup(g, d_gens), "D").group);
    if (auto vd = try_units(alg_d, ctx)) {
      const auto id = abelian_invariants(*vd);
      w["FD_invariants"] = id;
      ok = ok && id == *r.quotient_invariants;
    }
  }
  if (ok) {
    out.push_back(passed("criterion.projection", reason));
  } else {
    out.push_back(failed("criterion.projection", "projection or invariant mismatch", w));
  }
  return out;
}

CheckOutcome verify_order_law(const CaseContext& ctx) {
  const GroupAlgebra& alg = ctx.algebra;
  const FiniteGroup& g = alg.group();
  const FiniteField& f = alg.field();
  const std::uint32_t p = f.characteristic();
  if (g.order() % p != 0) return skipped("order_law", "not-applicable: non-modular");
  const Subgroup sp = sylow_subgroup(g, p);
  if (!is_normal(sp)) return skipped("order_law", "not-applicable: Syl_p(G) is not normal");
  const Quotient q = quotient(sp);
  const GroupAlgebra alg_q(f, q.group);
  const auto count_q = try_count(alg_q, ctx.budget, ctx.jobs);
  if (!count_q) return skipped("order_law", "budget: V(F[G/P]) not enumerable");
  const std::uint64_t exponent = g.order() - q.group.order();
  const std::uint64_t formula = saturating_pow(f.order(), exponent) * *count_q;
  const std::string rhs = "q^" + std::to_string(exponent) + " * " + std::to_string(*count_q) + " = " +
                          std::to_string(formula);
  if (ctx.unit_count) {
    if (*ctx.unit_count == formula) return passed("order_law", "|V| = " + std::to_string(*ctx.unit_count) + " = " + rhs);
    return failed("order_law", "|V| = " + std::to_string(*ctx.unit_count) + " but " + rhs,
                  {{"unit_count", *ctx.unit_count}, {"formula", formula}});
  }
  // unit(v) <=> unit(collapse(v)) is what makes the count multiply.
  const std::size_t chunks = default_chunks(ctx.jobs);
  std::vector<std::optional<json>> bad(chunks);
  parallel_chunks(ctx.samples, chunks, ctx.jobs, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
    UnitTester big(alg), small(alg_q);
    for (std::uint64_t i = lo; i < hi; ++i) {
      const AlgebraElement v = random_normalized(alg, ctx.seed, kOrderLawStream + i);
      const AlgebraElement pi = collapse(v, q, alg_q);
      if (big.is_unit(v.coeffs()) != small.is_unit(pi.coeffs())) {
        bad[c] = json{{"element", element_to_json(v)}, {"sample", i}};
        return;
      }
    }
  });
  for (auto& b : bad) {
    if (b) return failed("order_law", "unit status differs from that of the collapsed image", *b);
  }
  return passed("order_law", "formula |V| = " + rhs + "; unit(v) <=> unit(collapse(v)) on " +
                                 std::to_string(ctx.samples) + " samples");
}

CheckOutcome commutator_power_identity(const GroupAlgebra& algebra, Elem a, Elem g, std::size_t m) {
  const std::string name = "identity.commutator_power";
  const FiniteGroup& grp = algebra.group();
  const AlgebraElement am1 = algebra.basis(a) - algebra.one();
  const AlgebraElement x = hat(algebra, generated_subgroup(grp, {a})) * algebra.basis(g) * am1;
  if (x.is_zero()) return skipped(name, "x = 0: g normalizes <a>");
  AlgebraElement lhs = algebra.one() + x;
  for (std::size_t i = 0; i < m; ++i) lhs = unit_commutator(lhs, algebra.basis(a));
  const AlgebraElement rhs = algebra.one() + x * power(am1, m);
  json w = {{"a", grp.label(a)}, {"g", grp.label(g)}, {"m", m}};
  if (lhs == rhs) return passed(name, "m = " + std::to_string(m));
  w["lhs"] = element_to_json(lhs);
  w["rhs"] = element_to_json(rhs);
  return failed(name, "(1+x, a, m) != 1 + x(a-1)^m", w);
}

CheckOutcome idempotent_commutator_identity(const AlgebraElement& e, Elem g, Elem a, std::size_t n) {
  const std::string name = "identity.idempotent_commutator";
  const GroupAlgebra& algebra = e.algebra();
  const FiniteGroup& grp = algebra.group();
  const Elem b = grp.mul(grp.mul(grp.inv(g), grp.inv(a)), grp.mul(g, a));
  const AlgebraElement ea = algebra.basis(a), eb = algebra.basis(b), eg = algebra.basis(g);
  if (!(e * e == e)) return skipped(name, "e is not idempotent");
  if (!(e * ea == ea * e) || !(e * eb == eb * e) || grp.mul(a, b) != grp.mul(b, a)) {
    return skipped(name, "e, a and b do not commute");
  }
  if (!(e * eg * e).is_zero()) return skipped(name, "ege != 0");
  const AlgebraElement egx = e * eg;
  AlgebraElement lhs = algebra.one() + egx;
  for (std::size_t i = 0; i < n; ++i) lhs = unit_commutator(lhs, ea);
  const AlgebraElement rhs = algebra.one() + egx * power(eb - algebra.one(), n);
  json w = {{"e", element_to_json(e)}, {"g", grp.label(g)}, {"a", grp.label(a)}, {"n", n}};
  if (lhs == rhs) return passed(name, "n = " + std::to_string(n));
  w["lhs"] = element_to_json(lhs);
  w["rhs"] = element_to_json(rhs);
  return failed(name, "(1+eg, a, n) != 1 + eg(b-1)^n", w);
}

CheckOutcome binomial_collapse_identity(const GroupAlgebra& algebra, Elem c, Elem g, Elem h, std::size_t m) {
  const std::string name = "identity.binomial_collapse";
  const FiniteGroup& grp = algebra.group();
  const std::uint32_t p = algebra.field().characteristic();
  if (!center(grp).contains(c) || grp.element_order(c) != p) {
    throw std::invalid_argument("binomial collapse needs a central element of order char F");
  }
  const std::uint64_t q = saturating_pow(p, m);
  const AlgebraElement chat = hat(algebra, generated_subgroup(grp, {c}));
  AlgebraElement lhs = algebra.one() + algebra.basis(g) * chat;
  for (std::uint64_t i = 0; i < q; ++i) lhs = unit_commutator(lhs, algebra.basis(h));
  const Elem conj = grp.conj(g, grp.pow(h, static_cast<std::int64_t>(q)));
  const AlgebraElement rhs = algebra.one() + chat * (algebra.basis(conj) - algebra.basis(g));
  json w = {{"c", grp.label(c)}, {"g", grp.label(g)}, {"h", grp.label(h)}, {"m", m}};
  if (lhs == rhs) return passed(name, "q = " + std::to_string(q));
  w["lhs"] = element_to_json(lhs);
  w["rhs"] = element_to_json(rhs);
  return failed(name, "(1 + g c^, h, q) != 1 + c^(g^(h^q) - g)", w);
}

CheckOutcome IdentityBatch::outcome() const {
  if (first_failure) {
    CheckOutcome o = *first_failure;
    o.name = name;
    o.reason = std::to_string(instances - passed) + " of " + std::to_string(instances) + " instances failed: " + o.reason;
    return o;
  }
  if (instances == 0) return skipped(name, "no admissible instance");
  return vfg::passed(name, std::to_string(instances) + " instances, exact equality");
}

std::vector<IdentityBatch> run_identity_checks(const GroupAlgebra& algebra, std::size_t count, std::uint64_t seed,
                                               const EnumerationBudget& budget) {
  const FiniteGroup& g = algebra.group();
  const std::uint32_t p = algebra.field().characteristic();
  const std::size_t n = g.order();
  auto rng = stream_rng(seed, 0x6964656eULL);
  auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
  auto record = [](IdentityBatch& batch, CheckOutcome o) {
    if (o.status == CheckStatus::Skipped) return;
    ++batch.instances;
    if (o.status == CheckStatus::Pass) {
      ++batch.passed;
    } else if (!batch.first_failure) {
      batch.first_failure = std::move(o);
    }
  };

  std::vector<IdentityBatch> out(3);
  out[0].name = "identity.commutator_power";
  out[1].name = "identity.idempotent_commutator";
  out[2].name = "identity.binomial_collapse";

  // Pairs with g outside N(<a>), where x = hat(<a>) g (a-1) is nonzero.
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem a = 1; a < n; ++a) {
    const Subgroup na = normalizer(generated_subgroup(g, {a}));
    for (Elem x = 1; x < n; ++x) {
      if (!na.contains(x)) pairs.emplace_back(a, x);
    }
  }
  for (std::size_t i = 0; i < count && !pairs.empty(); ++i) {
    const auto [a, x] = pairs[pick(pairs.size())];
    record(out[0], commutator_power_identity(algebra, a, x, pick(6)));
  }

  // (a, g, e) with T = <a, b> abelian and e a nonzero idempotent of FT with ege = 0.
  struct Triple {
    Elem a, g;
    std::size_t e;
  };
  std::vector<AlgebraElement> idempotents;
  std::vector<Triple> triples;
  std::map<std::string, std::vector<std::size_t>> cache;
  for (Elem a = 1; a < n; ++a) {
    for (Elem x = 1; x < n; ++x) {
      const Elem b = g.mul(g.mul(g.inv(x), g.inv(a)), g.mul(x, a));
      const Subgroup t = generated_subgroup(g, {a, b});
      if (!is_abelian(t)) continue;
      const std::string key = t.members().to_string();
      auto it = cache.find(key);
      if (it == cache.end()) {
        std::vector<std::size_t> ids;
        try {
          for (auto& e : enumerate_idempotents(algebra, t, budget).elements) {
            if (e.is_zero()) continue;
            ids.push_back(idempotents.size());
            idempotents.push_back(std::move(e));
          }
        } catch (const BudgetExceeded&) {
        }
        it = cache.emplace(key, std::move(ids)).first;
      }
      const AlgebraElement gx = algebra.basis(x);
      for (std::size_t id : it->second) {
        if ((idempotents[id] * gx * idempotents[id]).is_zero()) triples.push_back({a, x, id});
      }
    }
  }
  for (std::size_t i = 0; i < count && !triples.empty(); ++i) {
    const Triple& t = triples[pick(triples.size())];
    record(out[1], idempotent_commutator_identity(idempotents[t.e], t.g, t.a, pick(6)));
  }

  // Central elements of order p.
  std::vector<Elem> central;
  for (Elem c : center(g).elements()) {
    if (g.element_order(c) == p) central.push_back(c);
  }
  for (std::size_t i = 0; i < count && !central.empty(); ++i) {
    const Elem c = central[pick(central.size())];
    const Elem x = static_cast<Elem>(pick(n));
    const Elem h = static_cast<Elem>(pick(n));
    std::size_t m = pick(3);
    while (m > 0 && saturating_pow(p, m) > 32) --m;
    record(out[2], binomial_collapse_identity(algebra, c, x, h, m));
  }
  return out;
}

}  // namespace vfg

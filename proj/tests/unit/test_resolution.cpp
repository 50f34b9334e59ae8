#include <doctest.h>

#include "oracle.hpp"
#include "perfacto/bifunctor.hpp"
#include "perfacto/errors.hpp"
#include "perfacto/random.hpp"
#include "perfacto/resolution.hpp"

using namespace perfacto;
using Kind = DeskGenerator::Components;

namespace {

Ring Z() { return Ring::integers(); }
Ring Z2() { return Ring::integers_mod(2); }
Ring Z6() { return Ring::integers_mod(6); }

ChainComplex at(const PresentedModule& m, int v) { return ChainComplex::concentrated(m, v); }

// Z/2 --.3--> Z/6 --reduce--> Z/3 in degrees 2, 1, 0 over Z/6
ChainComplex z6_three_term() {
  return make_complex(Z6(), 0, 2,
                      {{2, PresentedModule::cyclic(Z6(), 2)},
                       {1, PresentedModule::free(Z6(), 1)},
                       {0, PresentedModule::cyclic(Z6(), 3)}},
                      {{2, Matrix::from_rows(Z6(), {{3}})}, {1, Matrix::from_rows(Z6(), {{1}})}});
}

ChainComplex two_term(const Ring& R, long a, int top) {
  return make_complex(R, top - 1, top,
                      {{top, PresentedModule::free(R, 1)}, {top - 1, PresentedModule::free(R, 1)}},
                      {{top, Matrix::from_rows(R, {{a}})}});
}

bool homology_matches_below(const SemifreeResolution& r, const ChainComplex& m) {
  auto hp = homology_report(r.P);
  auto hm = homology_report(m);
  for (int v = r.window_lo - 1; v < r.ceiling; ++v) {
    std::string a = hp.count(v) ? hp.at(v) : "0";
    std::string b = hm.count(v) ? hm.at(v) : "0";
    if (a != b) return false;
  }
  ChainMap h = zbhc_map(r.pi, GradedFunctor::H);
  for (int v = r.window_lo; v < r.ceiling; ++v)
    if (m.in_support(v) && !h.component(v).is_isomorphism()) return false;
  return !m.in_support(r.ceiling) || h.component(r.ceiling).is_surjective();
}

}  // namespace

TEST_CASE("disc surjections") {
  auto m = at(PresentedModule::cyclic(Z(), 2), 0);
  auto f = PresentedModule::free(Z(), 1);
  auto s = disc_surjection(ModuleMorphism(f, m.component(0), Matrix::identity(Z(), 1)), m, 0);
  CHECK(s.component(-1).is_zero());
  CHECK(s.is_degreewise_surjective());

  auto t = two_term(Z(), 2, 1);
  auto u = disc_surjection(ModuleMorphism(f, t.component(1), Matrix::from_rows(Z(), {{5}})), t, 1);
  CHECK(u.component(0).action() == Matrix::from_rows(Z(), {{10}}));

  auto zero = disc_surjection(ModuleMorphism::zero(f, t.component(1)), t, 1);
  CHECK(zero.is_zero());
  CHECK_THROWS_AS(disc_surjection(ModuleMorphism::identity(m.component(0)), m, 0),
                  HypothesisViolation);
}

TEST_CASE("presentations of complexes") {
  auto empty = present_complex(ChainComplex::zero(Z()));
  CHECK(empty.L0.is_zero());
  CHECK(empty.L1.is_zero());

  auto z2 = present_complex(at(PresentedModule::cyclic(Z(), 2), 0));
  CHECK(z2.is_exact());
  CHECK(z2.L0.describe() == disc(0, PresentedModule::free(Z(), 1)).describe());
  CHECK(z2.L0.is_degreewise_free_presented());
  CHECK(z2.L1.is_degreewise_free_presented());

  for (const Ring& R : {Z(), Z6()}) {
    DeskGenerator gen(R, 5);
    for (int trial = 0; trial < 8; ++trial) {
      auto m = gen.complex(-1, 1, 2);
      auto p = present_complex(m);
      CHECK(p.is_exact());
      CHECK(p.L0.is_degreewise_free_presented());
      CHECK(p.L1.is_degreewise_free_presented());
      for (int v = m.lo(); v <= m.hi(); ++v)
        if (m.component(v).generators() == 0 && m.component(v + 1).generators() == 0)
          CHECK(p.L0.component(v).generators() == 0);
    }
  }
}

TEST_CASE("semi-free resolutions") {
  auto d = disc(0, PresentedModule::free(Z(), 1));
  auto rd = semifree_resolution(d, 2);
  CHECK(homology_matches_below(rd, d));
  CHECK(rd.pi.is_degreewise_surjective());

  auto z2 = at(PresentedModule::cyclic(Z(), 2), 0);
  auto r = semifree_resolution(z2, 2);
  CHECK(r.P.is_degreewise_free_presented());
  CHECK(r.P.lo() == 0);
  CHECK(r.pi.is_degreewise_surjective());
  CHECK(homology_matches_below(r, z2));
  CHECK(homology_report(r.P).at(0) == "Z/2");
  CHECK(homology_report(r.P).at(1) == "0");

  auto t = two_term(Z(), 3, 1);
  auto rt = semifree_resolution(t, 1);
  CHECK(homology_matches_below(rt, t));
  CHECK(rt.pi.is_degreewise_surjective());

  CHECK_THROWS_AS(semifree_resolution(t, 0), HypothesisViolation);

  for (const Ring& R : {Z(), Z6()}) {
    DeskGenerator gen(R, 13);
    for (int trial = 0; trial < 8; ++trial) {
      auto m = gen.complex(-1, 1, 2);
      int ceiling = (m.is_zero() ? 0 : m.sup()) + 2;
      auto res = semifree_resolution(m, ceiling);
      CHECK(res.P.is_degreewise_free_presented());
      CHECK(res.pi.is_degreewise_surjective());
      CHECK(homology_matches_below(res, m));
      if (!m.is_zero()) CHECK(res.P.lo() >= m.inf());
    }
  }
}

TEST_CASE("contraction examples") {
  auto d = disc(0, PresentedModule::free(Z(), 1));
  auto c = contraction(d);
  REQUIRE(c);
  CHECK(c->verify());
  CHECK(c->sigma.component(-1).action() == Matrix::identity(Z(), 1));
  CHECK_FALSE(contraction(at(PresentedModule::cyclic(Z(), 2), 0)));
  auto three = contraction(z6_three_term());
  REQUIRE(three);
  CHECK(three->verify());
  CHECK(oracle::brute_contractible(z6_three_term()));
  CHECK_FALSE(contraction(two_term(Z(), 2, 1)));
  // zero differential: d = d sigma d holds with sigma = 0, yet not contractible
  CHECK_FALSE(contraction(at(PresentedModule::cyclic(Z6(), 2), 0)));
  CHECK(oracle::brute_homology_order(at(PresentedModule::cyclic(Z6(), 2), 0), 0) == 2);
}

TEST_CASE("contraction agrees with brute-force search and with null homotopies") {
  for (const Ring& R : {Z2(), Z6()}) {
    DeskGenerator gen(R, 19);
    int yes = 0;
    for (int trial = 0; trial < 60; ++trial) {
      auto c = gen.complex(0, 2, 2, trial % 2 ? Kind::Any : Kind::Projective);
      bool brute = oracle::brute_contractible(c);
      auto found = contraction(c);
      CHECK(bool(found) == brute);
      CHECK(bool(null_homotopy(c)) == brute);
      yes += brute;
    }
    CHECK(yes > 0);
  }
}

TEST_CASE("cones of identities are contractible") {
  for (const Ring& R : {Z(), Z6()}) {
    DeskGenerator gen(R, 23);
    for (int trial = 0; trial < 5; ++trial) {
      std::map<int, PresentedModule> mods;
      for (int v = 0; v <= 2; ++v) mods.emplace(v, gen.module(2));
      auto b = make_complex(R, 0, 2, mods, {});
      auto c = cone(ChainMap::identity(b)).complex;
      auto s = contraction(c);
      REQUIRE(s);
      CHECK(s->verify());
    }
  }
}

TEST_CASE("Hom and tensor with a contractible complex are contractible") {
  DeskGenerator gen(Z6(), 29);
  for (int trial = 0; trial < 4; ++trial) {
    auto c = cone(ChainMap::identity(gen.complex(0, 1, 2))).complex;
    REQUIRE(contraction(c));
    auto x = gen.complex(0, 1, 2);
    CHECK(contraction(total_hom(c, x).complex));
    CHECK(contraction(total_hom(x, c).complex));
    CHECK(contraction(total_tensor(x, c).complex));
  }
}

TEST_CASE("factorization through a perfect complex") {
  SUBCASE("identity of Z/2 over Z/6") {
    auto z2 = at(PresentedModule::cyclic(Z6(), 2), 0);
    auto id = ChainMap::identity(z2);
    auto cert = factor_through_perfect(id);
    CHECK(cert.verify(id));
    CHECK(cert.L.is_degreewise_free_presented());
    CHECK((cert.trace.kappa_prime * cert.trace.presentation.psi1).is_zero());
    CHECK(cert.trace.rounds == 1);
    CHECK(cert.L.describe() == "Z/6@0");
    CHECK(cert.kappa.component(0).action() == Matrix::from_rows(Z6(), {{3}}));
    CHECK(cert.lambda.component(0).action() == Matrix::from_rows(Z6(), {{1}}));
  }
  SUBCASE("iterative deepening") {
    auto z2 = at(PresentedModule::cyclic(Z6(), 2), 0);
    auto id = ChainMap::identity(z2);
    CHECK_THROWS_AS(factor_through_perfect(id, {-1, 1}), WindowExhausted);
    auto cert = factor_through_perfect(id, {-1, 2});
    CHECK(cert.trace.rounds == 2);
    CHECK(cert.verify(id));
  }
  SUBCASE("zero source") {
    auto zero = ChainComplex::zero(Z6());
    auto f = at(PresentedModule::free(Z6(), 1), 0);
    auto cert = factor_through_perfect(ChainMap::zero(zero, f));
    CHECK(cert.L.is_zero());
  }
  SUBCASE("non-flat target is rejected") {
    auto z2 = at(PresentedModule::cyclic(Z(), 2), 0);
    CHECK_THROWS_AS(factor_through_perfect(ChainMap::identity(z2)), HypothesisViolation);
  }
  SUBCASE("random maps into perfect and projective targets") {
    for (const Ring& R : {Z(), Z6()}) {
      DeskGenerator gen(R, 31);
      for (int trial = 0; trial < 6; ++trial) {
        auto n = gen.complex(0, 1, 2);
        auto f = gen.complex(0, 1, 2, R == Z() ? Kind::Free : Kind::Projective);
        auto phi = gen.chain_map(n, f);
        auto cert = factor_through_perfect(phi);
        CHECK(cert.verify(phi));
        CHECK((cert.lambda * cert.kappa).equals(phi));
        CHECK(cert.L.is_degreewise_free_presented());
        CHECK((cert.trace.kappa_prime * cert.trace.presentation.psi1).is_zero());
        CHECK(cert.trace.rounds <= 3);
      }
    }
  }
}

TEST_CASE("factorization through a contractible complex") {
  auto d = disc(0, PresentedModule::free(Z(), 1));
  auto direct = factor_through_contractible(ChainMap::identity(d));
  CHECK(direct.L.describe() == d.describe());
  CHECK((direct.lambda * direct.kappa).equals(ChainMap::identity(d)));

  auto c = z6_three_term();
  auto sub = disc(1, PresentedModule::cyclic(Z6(), 2));
  auto incl = ChainMap::from_actions(sub, c, {{1, Matrix::from_rows(Z6(), {{3}})}});
  auto through = factor_through_contractible(incl);
  CHECK((through.lambda * through.kappa).equals(incl));
  CHECK(through.L.is_degreewise_free_presented());
  CHECK(contraction(through.L));

  auto zero = factor_through_contractible(ChainMap::zero(ChainComplex::zero(Z6()), c));
  CHECK((zero.lambda * zero.kappa).is_zero());

  CHECK_THROWS_AS(factor_through_contractible(ChainMap::identity(at(PresentedModule::free(Z(), 1), 0))),
                  HypothesisViolation);

  DeskGenerator gen(Z6(), 37);
  for (int trial = 0; trial < 5; ++trial) {
    auto target = cone(ChainMap::identity(gen.complex(0, 1, 2, Kind::Projective))).complex;
    auto n = gen.complex(0, 2, 2);
    auto phi = gen.chain_map(n, target);
    auto f = factor_through_contractible(phi);
    CHECK((f.lambda * f.kappa).equals(phi));
    CHECK(contraction(f.L));
  }
}

TEST_CASE("acyclic semi-flat classification") {
  auto d = classify_acyclic_semiflat(disc(0, PresentedModule::free(Z(), 1)));
  CHECK(d.acyclic);
  CHECK(d.boundaries_flat);
  CHECK(d.contraction);

  auto three = classify_acyclic_semiflat(z6_three_term());
  CHECK(three.acyclic);
  CHECK(three.boundaries_flat);
  CHECK(three.degreewise_projective);
  CHECK(three.contraction);
  auto b = zbhc(z6_three_term()).B;
  CHECK(flatness(b.component(1)).projective);
  CHECK_FALSE(flatness(b.component(1)).free);

  auto z2 = classify_acyclic_semiflat(at(PresentedModule::cyclic(Z(), 2), 0));
  CHECK_FALSE(z2.acyclic);
  CHECK_FALSE(z2.contraction);

  DeskGenerator gen(Z6(), 41);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = gen.complex(0, 2, 2, Kind::Projective);
    auto r = classify_acyclic_semiflat(p);
    if (r.acyclic) CHECK(r.contraction);
  }
}

TEST_CASE("semi-projectivity probes") {
  auto zz = at(PresentedModule::free(Z(), 1), 0);
  auto d = disc(0, PresentedModule::free(Z(), 1));
  auto sum = direct_sum({zz, d});
  auto beta = sum.projections[0];
  auto free_verdict = is_semi_projective_probe(zz, {{ChainMap::identity(zz), beta}});
  CHECK(free_verdict.holds);
  REQUIRE(free_verdict.lifts.size() == 1);
  CHECK((beta * free_verdict.lifts[0]).equals(ChainMap::identity(zz)));

  // Z/2@0 over Z against the resolution Z --2--> Z of Z/2
  auto z2 = at(PresentedModule::cyclic(Z(), 2), 0);
  auto m = two_term(Z(), 2, 1);
  auto reduce = ChainMap::from_actions(m, z2, {{0, Matrix::identity(Z(), 1)}});
  auto pinned = is_semi_projective_probe(z2, {{ChainMap::identity(z2), reduce}});
  CHECK_FALSE(pinned.holds);
  REQUIRE(pinned.failure);
  CHECK(pinned.failure->certificate_verifies());

  auto zero = ChainComplex::zero(Z());
  CHECK(is_semi_projective_probe(zero, {}).holds);

  auto not_qis = ChainMap::from_actions(d, zz, {{0, Matrix::identity(Z(), 1)}});
  CHECK_THROWS_AS(is_semi_projective_probe(zz, {{ChainMap::identity(zz), not_qis}}),
                  HypothesisViolation);

  DeskGenerator gen(Z6(), 43);
  for (int trial = 0; trial < 5; ++trial) {
    auto p = gen.complex(0, 1, 2, Kind::Projective);
    auto target = gen.complex(0, 1, 2);
    auto c = cone(ChainMap::identity(gen.complex(0, 1, 2))).complex;
    auto s = direct_sum({target, c});
    auto b = s.projections[0] + gen.chain_map(c, target) * s.projections[1];
    REQUIRE(is_quasi_iso(b));
    auto v = is_semi_projective_probe(p, {{gen.chain_map(p, target), b}});
    CHECK(v.holds);
  }
}

TEST_CASE("semi-flatness at desk scale") {
  CHECK(is_semi_flat_desk(two_term(Z(), 2, 1)));
  CHECK_FALSE(is_semi_flat_desk(at(PresentedModule::cyclic(Z(), 2), 0)));
  CHECK(is_semi_flat_desk(at(PresentedModule::cyclic(Z6(), 2), 0)));
  CHECK_FALSE(is_semi_flat_desk(at(PresentedModule::cyclic(Ring::integers_mod(4), 2), 0)));
}

TEST_CASE("extensions of flat complexes are flat") {
  for (const Ring& R : {Z(), Z6()}) {
    DeskGenerator gen(R, 47);
    for (int trial = 0; trial < 5; ++trial) {
      for (auto kind : {Kind::Projective, Kind::Free}) {
        auto x = gen.complex(0, 1, 2, kind);
        auto y = gen.complex(0, 1, 2, kind);
        auto middle = cone(gen.chain_map(x, y)).complex;
        for (int v = middle.lo(); v <= middle.hi(); ++v) {
          CHECK(flatness(middle.component(v)).flat);
          CHECK(flatness(middle.component(v)).projective);
        }
      }
    }
  }
}

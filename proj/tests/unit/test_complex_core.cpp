#include <doctest.h>

#include "oracle.hpp"
#include "perfacto/complex.hpp"
#include "perfacto/errors.hpp"
#include "perfacto/random.hpp"

using namespace perfacto;

namespace {

Ring Z() { return Ring::integers(); }
Ring Z6() { return Ring::integers_mod(6); }

ChainComplex z6_window(int terms) {
  // alternating .2 and .3 on Z/6 in degrees terms-1 .. 0
  std::map<int, PresentedModule> mods;
  std::map<int, Matrix> diffs;
  for (int v = 0; v < terms; ++v) mods.emplace(v, PresentedModule::free(Z6(), 1));
  for (int v = 1; v < terms; ++v) diffs.emplace(v, Matrix::from_rows(Z6(), {{v % 2 ? 2 : 3}}));
  return make_complex(Z6(), 0, terms - 1, mods, diffs);
}

ChainComplex z_at(int v) { return ChainComplex::concentrated(PresentedModule::free(Z(), 1), v); }

}  // namespace

TEST_CASE("make_complex examples") {
  auto single = ChainComplex::concentrated(PresentedModule::cyclic(Z(), 2), 0);
  CHECK(single.differential(0).is_zero());
  auto w = z6_window(4);
  CHECK(w.lo() == 0);
  CHECK(w.hi() == 3);
  std::map<int, PresentedModule> mods{{0, PresentedModule::free(Z6(), 1)},
                                      {1, PresentedModule::free(Z6(), 1)},
                                      {2, PresentedModule::free(Z6(), 1)}};
  std::map<int, Matrix> diffs{{1, Matrix::from_rows(Z6(), {{2}})},
                              {2, Matrix::from_rows(Z6(), {{2}})}};
  try {
    make_complex(Z6(), 0, 2, mods, diffs);
    FAIL("expected NotAComplex");
  } catch (const NotAComplex& e) {
    CHECK(e.degree() == 2);
  }
}

TEST_CASE("shift and disc") {
  CHECK(shift(ChainComplex::zero(Z())).is_zero());
  auto s = shift(z_at(0));
  CHECK(s.lo() == 1);
  CHECK(s.component(1).generators() == 1);
  auto w = z6_window(4);
  auto ss = shift(shift(w));
  for (int v = 1; v <= 3; ++v) CHECK(ss.differential(v + 2).action() == w.differential(v).action());
  CHECK(shift(w).differential(2).action() == -w.differential(1).action());

  auto d = disc(0, PresentedModule::free(Z(), 1));
  CHECK(d.lo() == -1);
  CHECK(d.hi() == 0);
  CHECK(d.differential(0).action() == Matrix::identity(Z(), 1));
  CHECK(disc(3, PresentedModule::zero(Z())).is_zero());
  auto d2 = disc(1, PresentedModule::cyclic(Z6(), 2));
  CHECK(d2.differential(1).is_isomorphism());
}

TEST_CASE("cone examples") {
  SUBCASE("cone of the identity is a disc and acyclic") {
    auto c = cone(ChainMap::identity(z_at(0)));
    CHECK(c.complex.component(1).generators() == 1);
    CHECK(c.complex.component(0).generators() == 1);
    CHECK(c.complex.differential(1).is_isomorphism());
    CHECK(is_acyclic(c.complex));
  }
  SUBCASE("cone of 0 -> N") {
    auto n = z6_window(3);
    auto c = cone(ChainMap::zero(ChainComplex::zero(Z6()), n));
    CHECK(homology_report(c.complex) == homology_report(n));
  }
  SUBCASE("cone of multiplication by 2 on Z@0") {
    auto f = ChainMap::from_actions(z_at(0), z_at(0), {{0, Matrix::from_rows(Z(), {{2}})}});
    auto c = cone(f);
    auto h = homology_report(c.complex);
    CHECK(h[0] == "Z/2");
    CHECK(h[1] == "0");
  }
}

TEST_CASE("zbhc examples") {
  auto p = zbhc(disc(0, PresentedModule::free(Z(), 1)));
  CHECK(p.Z.component(-1).describe() == "Z");
  CHECK(p.Z.component(0).is_zero());
  CHECK(p.B.component(-1).describe() == "Z");
  CHECK(p.H.is_zero());
  CHECK(p.C.component(0).describe() == "Z");
  CHECK(p.C.component(-1).is_zero());

  auto q = zbhc(ChainComplex::concentrated(PresentedModule::cyclic(Z(), 2), 0));
  CHECK(q.Z.component(0).describe() == "Z/2");
  CHECK(q.H.component(0).describe() == "Z/2");
  CHECK(q.C.component(0).describe() == "Z/2");
  CHECK(q.B.component(0).is_zero());

  auto w = z6_window(6);
  auto h = homology_report(w);
  for (int v = 1; v <= 4; ++v) CHECK(h[v] == "0");
}

TEST_CASE("quasi-isomorphism examples") {
  auto w = z6_window(3);
  CHECK(is_quasi_iso(ChainMap::identity(w)));
  auto d = disc(0, PresentedModule::free(Z(), 1));
  CHECK(is_quasi_iso(ChainMap::zero(ChainComplex::zero(Z()), d)));
  auto pi = ChainMap::from_actions(d, z_at(0), {{0, Matrix::identity(Z(), 1)}});
  CHECK(!is_quasi_iso(pi));
  CHECK(!is_quasi_iso_by_cone(pi));
}

TEST_CASE("homology orders agree with enumeration") {
  for (long n : {2L, 6L}) {
    DeskGenerator gen(Ring::integers_mod(n), 100 + n);
    for (int trial = 0; trial < 60; ++trial) {
      auto c = gen.complex(0, 2, 2);
      auto p = zbhc(c);
      for (int v = 0; v <= 2; ++v)
        CHECK(p.H.component(v).cardinality().get_si() == oracle::brute_homology_order(c, v));
    }
  }
}

TEST_CASE("cone properties: split exactness and the two quasi-iso routes") {
  for (Ring R : {Ring::integers_mod(2), Ring::integers_mod(6), Ring::integers()}) {
    DeskGenerator gen(R, 7);
    for (int trial = 0; trial < 40; ++trial) {
      auto m = gen.complex(0, 2, 2), n = gen.complex(0, 2, 2);
      auto f = gen.chain_map(m, n);
      auto c = cone(f);
      for (int v = c.complex.lo(); v <= c.complex.hi(); ++v) {
        auto i = c.inclusion.component(v), p = c.projection.component(v);
        auto s = c.section.count(v) ? c.section.at(v)
                                    : ModuleMorphism::zero(shift(m).component(v), c.complex.component(v));
        auto r = c.retraction.at(v);
        CHECK((r * i).equals(ModuleMorphism::identity(n.component(v))));
        CHECK((p * s).equals(ModuleMorphism::identity(shift(m).component(v))));
        CHECK((p * i).is_zero());
        CHECK((i * r + s * p).equals(ModuleMorphism::identity(c.complex.component(v))));
      }
      CHECK(is_quasi_iso_by_homology(f) == is_quasi_iso_by_cone(f));
    }
  }
}

TEST_CASE("Z, B, H, C are functorial") {
  DeskGenerator gen(Ring::integers_mod(6), 19);
  for (int trial = 0; trial < 25; ++trial) {
    auto a = gen.complex(0, 2, 2), b = gen.complex(0, 2, 2), c = gen.complex(0, 2, 2);
    auto f = gen.chain_map(a, b), g = gen.chain_map(b, c);
    auto pa = zbhc(a), pb = zbhc(b), pc = zbhc(c);
    for (auto F : {GradedFunctor::Z, GradedFunctor::B, GradedFunctor::H, GradedFunctor::C}) {
      auto lhs = zbhc_map(g * f, F, pa, pc);
      auto rhs = zbhc_map(g, F, pb, pc) * zbhc_map(f, F, pa, pb);
      CHECK(lhs.equals(rhs));
      CHECK(zbhc_map(ChainMap::identity(a), F, pa, pa).equals(ChainMap::identity(piece(pa, F))));
    }
  }
}

TEST_CASE("homology of a shift moves up one degree") {
  DeskGenerator gen(Ring::integers(), 31);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = gen.complex(-1, 1, 2);
    auto h = homology_report(m), hs = homology_report(shift(m));
    for (int v = -1; v <= 1; ++v) CHECK(hs[v + 1] == h[v]);
  }
}

TEST_CASE("kernel, cokernel and image complexes") {
  DeskGenerator gen(Ring::integers_mod(6), 43);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = gen.complex(0, 2, 2), n = gen.complex(0, 2, 2);
    auto f = gen.chain_map(m, n);
    auto k = kernel_complex(f), q = cokernel_complex(f), im = image_complex(f);
    CHECK((f * k).is_zero());
    CHECK((q * f).is_zero());
    CHECK(im.is_degreewise_injective());
    CHECK(q.is_degreewise_surjective());
    CHECK(k.is_degreewise_injective());
  }
}

TEST_CASE("chain map validation reports the failing degree") {
  auto d = disc(0, PresentedModule::free(Z(), 1));
  try {
    ChainMap::from_actions(z_at(0), d, {{0, Matrix::identity(Z(), 1)}});
    FAIL("expected NotAChainMap");
  } catch (const NotAChainMap& e) {
    CHECK(e.degree() == 0);
  }
}

#include "corpus.hpp"

#include <sstream>

#include "perfacto/resolution.hpp"

namespace perfacto::corpus {

namespace {

Ring Z() { return Ring::integers(); }
Ring Z6() { return Ring::integers_mod(6); }

Check window_check() {
  Check c{"window", "Z/6 window complex: d*d = 0 and H = 0 in interior degrees", false, ""};
  auto w = z6_window();
  auto h = homology_report(w);
  std::ostringstream out;
  bool ok = true;
  for (int v = w.lo() + 1; v < w.hi(); ++v) {
    out << "H" << v << "=" << h.at(v) << " ";
    ok = ok && h.at(v) == "0";
  }
  c.passed = ok && w.hi() - w.lo() + 1 >= 5;
  c.detail = out.str() + "(ends H" + std::to_string(w.lo()) + "=" + h.at(w.lo()) + ", H" +
             std::to_string(w.hi()) + "=" + h.at(w.hi()) + " excluded)";
  return c;
}

Check purity_check() {
  Check c{"non-pure", "disc(0, Z) -> Z@0 is degreewise surjective but not pure", false, ""};
  auto pi = disc_projection();
  auto zz = integers_at_zero();
  auto verdict = is_pure_epi(pi, {{zz, ChainMap::identity(zz)}});
  bool certified = verdict.counterexample && verdict.counterexample->outcome.certificate_verifies();
  c.passed = pi.is_degreewise_surjective() && !verdict.pure && certified;
  c.detail = std::string("surjective=") + (pi.is_degreewise_surjective() ? "yes" : "no") +
             " pure=" + (verdict.pure ? "yes" : "no") +
             " obstruction certified=" + (certified ? "yes" : "no");
  return c;
}

Check factorization_check() {
  Check c{"factorization", "id on Z/2@0 over Z/6 factors through a perfect complex", false, ""};
  auto z2 = z2_over_z6();
  auto id = ChainMap::identity(z2);
  auto cert = factor_through_perfect(id);
  bool ok = cert.verify(id) && cert.L.is_degreewise_free_presented() &&
            (cert.lambda * cert.kappa).equals(id);
  c.passed = ok;
  c.detail = "L = " + cert.L.describe() + ", kappa = " + cert.kappa.component(0).action().to_string() +
             ", lambda = " + cert.lambda.component(0).action().to_string() +
             ", rounds = " + std::to_string(cert.trace.rounds);
  return c;
}

Check contractible_check() {
  Check c{"contractible", "Z/2 -> Z/6 -> Z/3 is acyclic with flat boundaries and contractible",
          false, ""};
  auto report = classify_acyclic_semiflat(z6_three_term());
  bool contracted = report.contraction && report.contraction->verify();
  c.passed = report.acyclic && report.boundaries_flat && contracted;
  c.detail = std::string("acyclic=") + (report.acyclic ? "yes" : "no") +
             " boundaries flat=" + (report.boundaries_flat ? "yes" : "no") +
             " contraction=" + (contracted ? "verified" : "none");
  return c;
}

Check coequalizer_check() {
  Check c{"homology-coequalizer", "H does not commute with the pinned coequalizer; C does", false,
          ""};
  auto d = homology_failing_coequalizer();
  bool h = preservation_check(ComplexFunctor::graded(GradedFunctor::H), d).is_isomorphism;
  bool cc = preservation_check(ComplexFunctor::graded(GradedFunctor::C), d).is_isomorphism;
  c.passed = !h && cc;
  c.detail = std::string("H iso=") + (h ? "yes" : "no") + " C iso=" + (cc ? "yes" : "no") +
             ", colimit " + colimit(d).complex.describe();
  return c;
}

}  // namespace

ChainMap disc_projection() {
  auto d = disc(0, PresentedModule::free(Z(), 1));
  return ChainMap::from_actions(d, integers_at_zero(), {{0, Matrix::identity(Z(), 1)}});
}

ChainComplex integers_at_zero() { return ChainComplex::concentrated(PresentedModule::free(Z(), 1), 0); }

ChainComplex z6_window(int terms) {
  std::map<int, PresentedModule> mods;
  std::map<int, Matrix> diffs;
  for (int v = 0; v < terms; ++v) {
    mods.emplace(v, PresentedModule::free(Z6(), 1));
    if (v > 0) diffs.emplace(v, Matrix::from_rows(Z6(), {{v % 2 ? 2 : 3}}));
  }
  return make_complex(Z6(), 0, terms - 1, mods, diffs);
}

ChainComplex z2_over_z6() { return ChainComplex::concentrated(PresentedModule::cyclic(Z6(), 2), 0); }

ChainComplex z6_three_term() {
  return make_complex(Z6(), 0, 2,
                      {{2, PresentedModule::cyclic(Z6(), 2)},
                       {1, PresentedModule::free(Z6(), 1)},
                       {0, PresentedModule::cyclic(Z6(), 3)}},
                      {{2, Matrix::from_rows(Z6(), {{3}})}, {1, Matrix::from_rows(Z6(), {{1}})}});
}

FiniteDiagram homology_failing_coequalizer() {
  auto x = ChainComplex::concentrated(PresentedModule::free(Z(), 1), -1);
  auto y = disc(0, PresentedModule::free(Z(), 1));
  auto incl = ChainMap::from_actions(x, y, {{-1, Matrix::identity(Z(), 1)}});
  return FiniteDiagram::coequalizer(incl, ChainMap::zero(x, y));
}

std::vector<Check> run_demo() {
  return {purity_check(), window_check(), factorization_check(), contractible_check(),
          coequalizer_check()};
}

}  // namespace perfacto::corpus

#include "properties.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "oracle.hpp"
#include "perfacto/bifunctor.hpp"
#include "perfacto/colimit.hpp"
#include "perfacto/json_io.hpp"
#include "perfacto/random.hpp"
#include "perfacto/resolution.hpp"

namespace perfacto::properties {

namespace {

using Kind = DeskGenerator::Components;
using Status = TrialResult::Status;

// Brute-force enumeration is only attempted below this many candidate maps.
constexpr double kSearchLimit = 4096;
// Draws per trial before a trial gives up on finding an admissible instance.
constexpr int kAttempts = 40;

bool columns_agree(const PresentedModule& target, const Matrix& a, const Matrix& b) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!target.same_element(a.col(j), b.col(j))) return false;
  return true;
}

// beta * alpha == phi computed on action matrices, bypassing ChainMap algebra.
bool composite_is(const ChainMap& phi, const std::map<int, Matrix>& left,
                  const std::map<int, Matrix>& right) {
  const auto& src = phi.source();
  for (int v = src.lo(); v <= src.hi(); ++v) {
    const auto& tgt = phi.target().component(v);
    Matrix expect = phi.component(v).action();
    auto l = left.find(v);
    auto r = right.find(v);
    Matrix got = (l == left.end() || r == right.end())
                     ? Matrix(src.ring(), tgt.generators(), src.component(v).generators())
                     : l->second * r->second;
    if (!columns_agree(tgt, got, expect)) return false;
  }
  return true;
}

std::map<int, Matrix> actions(const ChainMap& f) {
  std::map<int, Matrix> out;
  for (int v = f.source().lo(); v <= f.source().hi(); ++v) out.emplace(v, f.component(v).action());
  return out;
}

std::string canonical_key(const ChainComplex& target, const std::map<int, Matrix>& acts) {
  std::string s;
  for (const auto& [v, a] : acts) {
    s += std::to_string(v) + ":";
    for (std::size_t j = 0; j < a.cols(); ++j)
      s += target.component(v).normal_form(a.col(j)).to_string();
    s += ";";
  }
  return s;
}

bool same_map(const ChainMap& a, const ChainMap& b) {
  if (!identical(a.source(), b.source()) || !identical(a.target(), b.target())) return false;
  for (int v = a.source().lo(); v <= a.source().hi(); ++v)
    if (a.component(v).action() != b.component(v).action()) return false;
  return true;
}

bool inverse_verified(const CanonicalMorphismCertificate& c) {
  if (!c.is_isomorphism || !c.inverse) return false;
  const auto& f = c.morphism;
  const auto& g = *c.inverse;
  return (g * f).equals(ChainMap::identity(f.source())) &&
         (f * g).equals(ChainMap::identity(f.target()));
}

Ring finite_ring(int which) { return which == 2 ? Ring::integers_mod(2) : Ring::integers_mod(6); }

// --- oracle equivalence ---------------------------------------------------

TrialResult lift_oracle(const Ring& R, std::uint64_t seed) {
  DeskGenerator gen(R, seed);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    auto n = gen.complex(0, 2, 2);
    auto x = gen.complex(0, 2, 2);
    auto y = gen.complex(0, 2, 2);
    if (oracle::chain_map_search_size(n, x) > kSearchLimit) continue;
    auto alpha = gen.chain_map(x, y);
    auto phi = gen.coin() ? alpha * gen.chain_map(n, x) : gen.chain_map(n, y);

    auto alpha_acts = actions(alpha);
    bool brute = false;
    oracle::enumerate_chain_maps(n, x, [&](const std::map<int, Matrix>& beta) {
      if (!brute) brute = composite_is(phi, alpha_acts, beta);
    });
    auto out = lift_chain_map(phi, alpha);
    TrialResult r;
    r.tallies[brute ? "liftable" : "not liftable"] = 1;
    if (bool(out) != brute)
      return TrialResult::fail("solver says " + std::string(out ? "liftable" : "not liftable") +
                               ", enumeration disagrees");
    if (out && !(alpha * *out.lift).equals(phi)) return TrialResult::fail("returned lift is wrong");
    if (!out && !out.certificate_verifies())
      return TrialResult::fail("obstruction certificate does not verify");
    return r;
  }
  return TrialResult::skip("no instance within the enumeration limit");
}

ChainComplex contraction_candidate(DeskGenerator& gen) {
  switch (gen.uniform(0, 2)) {
    case 0: return cone(ChainMap::identity(gen.complex(0, 1, 1))).complex;
    case 1: return gen.complex(0, 2, 2, Kind::Projective);
    default: return gen.complex(0, 2, 2, Kind::Any);
  }
}

TrialResult contraction_oracle(const Ring& R, std::uint64_t seed) {
  DeskGenerator gen(R, seed);
  auto c = contraction_candidate(gen);
  bool brute = oracle::brute_contractible(c);
  auto found = contraction(c);
  TrialResult r;
  r.tallies[brute ? "contractible" : "not contractible"] = 1;
  if (bool(found) != brute)
    return TrialResult::fail("solver says " + std::string(found ? "contractible" : "not contractible") +
                             " for " + c.describe() + ", enumeration disagrees");
  if (found && !found->verify()) return TrialResult::fail("returned contraction does not verify");
  return r;
}

TrialResult zhom_oracle(const Ring& R, std::uint64_t seed) {
  DeskGenerator gen(R, seed);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    auto m = gen.complex(0, 2, 2);
    auto n = gen.complex(0, 2, 2);
    if (oracle::chain_map_search_size(m, n) > kSearchLimit) continue;

    std::vector<std::map<int, Matrix>> enumerated;
    oracle::enumerate_chain_maps(m, n, [&](const std::map<int, Matrix>& f) { enumerated.push_back(f); });

    auto h = total_hom(m, n);
    auto pieces = zbhc(h.complex);
    const auto& z0 = pieces.Z.component(0);
    if (z0.cardinality() != static_cast<long>(enumerated.size()))
      return TrialResult::fail("|Z0| = " + z0.cardinality().get_str() + " but " +
                               std::to_string(enumerated.size()) + " chain maps enumerated");

    // Z0 -> chain maps is injective ...
    std::set<std::string> images;
    for (const auto& x : oracle::invariant_form_elements(z0)) {
      Matrix coords = pieces.cycles_in.at(0).apply(x);
      ChainMap f = h.to_chain_map(coords);
      images.insert(canonical_key(n, actions(f)));
      if (!h.complex.component(0).same_element(h.from_chain_map(f), coords))
        return TrialResult::fail("coordinates do not survive the round trip");
    }
    if (images.size() != enumerated.size())
      return TrialResult::fail("distinct cycles give equal chain maps");
    // ... and hits every enumerated chain map.
    for (const auto& acts : enumerated)
      if (!images.count(canonical_key(n, acts)))
        return TrialResult::fail("an enumerated chain map is not the image of a cycle");

    TrialResult r;
    r.tallies[enumerated.size() > 1 ? "several maps" : "only zero"] = 1;
    return r;
  }
  return TrialResult::skip("no instance within the enumeration limit");
}

// --- canonical morphisms ----------------------------------------------------

TrialResult canonical(const Ring& R, std::uint64_t seed) {
  DeskGenerator gen(R, seed);
  auto m = gen.complex(-1, 1, 2, Kind::Free);
  auto n = gen.complex(0, 1, 2, Kind::Free);
  auto n2 = gen.complex(0, 1, 2, Kind::Free);
  auto alpha = gen.chain_map(n, n2);

  std::vector<std::pair<std::string, CanonicalMorphismCertificate>> certs;
  certs.emplace_back("biduality", biduality(m));
  certs.emplace_back("tensor evaluation", tensor_evaluation(m, n));
  certs.emplace_back("hom evaluation", hom_evaluation(n, m));
  certs.emplace_back("xi", certify(xi(m, n)));
  certs.emplace_back("cone/Hom", cone_commute(m, alpha, BifunctorKind::Hom));
  certs.emplace_back("cone/tensor", cone_commute(m, alpha, BifunctorKind::Tensor));
  for (const auto& [name, c] : certs)
    if (!inverse_verified(c))
      return TrialResult::fail(name + " is not a verified isomorphism for M = " + m.describe());
  if (!bid_inverse_check(m)) return TrialResult::fail("bidual inverse check failed");
  return TrialResult::pass();
}

// --- factorization ------------------------------------------------------------

TrialResult factorization(std::uint64_t seed) {
  const Ring R = Ring::integers_mod(6);
  DeskGenerator gen(R, seed);
  auto n = gen.complex(-1, 1, 2);
  auto f = gen.complex(-1, 1, 2, Kind::Projective);
  auto phi = gen.chain_map(n, f);
  auto cert = factor_through_perfect(phi);
  TrialResult r;
  r.tallies["rounds=" + std::to_string(cert.trace.rounds)] = 1;
  r.tallies[phi.is_zero() ? "zero map" : "nonzero map"] = 1;
  if (cert.trace.rounds > 3) return TrialResult::fail("more than 3 deepening rounds");
  if (!cert.verify(phi)) return TrialResult::fail("certificate does not verify");
  if (!cert.L.is_degreewise_free_presented()) return TrialResult::fail("L is not degreewise free");
  if (!composite_is(phi, actions(cert.lambda), actions(cert.kappa)))
    return TrialResult::fail("lambda * kappa differs from phi on actions");
  return r;
}

// --- quasi-isomorphisms -------------------------------------------------------

TrialResult quasi_iso(std::uint64_t seed) {
  const Ring rings[] = {Ring::integers(), Ring::integers_mod(2), Ring::integers_mod(6),
                        Ring::rationals()};
  const Ring& R = rings[seed % 4];
  DeskGenerator gen(R, seed);
  auto m = gen.complex(0, 2, 2);
  ChainMap alpha = ChainMap::identity(m);
  switch (gen.uniform(0, 2)) {
    case 0: alpha = gen.chain_map(m, gen.complex(0, 2, 2)); break;
    case 1: {
      // inclusion into a sum with an acyclic disc
      int v = gen.uniform(1, 2);
      auto sum = direct_sum({m, disc(v, gen.module(1, Kind::Free))});
      alpha = sum.inclusions[0];
      break;
    }
    default: {
      auto sum = direct_sum({m, disc(gen.uniform(1, 2), gen.module(2))});
      alpha = sum.projections[0];
      break;
    }
  }
  bool by_h = is_quasi_iso_by_homology(alpha);
  bool by_cone = is_quasi_iso_by_cone(alpha);
  TrialResult r;
  r.tallies[by_h ? "quasi-iso" : "not quasi-iso"] = 1;
  if (by_h != by_cone)
    return TrialResult::fail("homology route says " + std::string(by_h ? "yes" : "no") +
                             ", cone route disagrees");
  return r;
}

// --- colimits -----------------------------------------------------------------

FiniteDiagram random_diagram(DeskGenerator& gen, int shape) {
  auto obj = [&] { return gen.complex(0, 1, 2); };
  switch (shape) {
    case 0: {
      std::vector<ChainComplex> objs;
      for (int k = gen.uniform(1, 3); k > 0; --k) objs.push_back(obj());
      return FiniteDiagram::coproduct(objs);
    }
    case 1: {
      auto x = obj(), y = obj();
      return FiniteDiagram::coequalizer(gen.chain_map(x, y), gen.chain_map(x, y));
    }
    case 2: {
      auto m = obj(), a = obj(), b = obj();
      return FiniteDiagram::pushout(gen.chain_map(m, a), gen.chain_map(m, b));
    }
    default: {
      auto a = obj(), b = obj(), c = obj();
      auto f = gen.chain_map(a, b);
      auto g = gen.chain_map(b, c);
      return FiniteDiagram::poset({a, b, c}, {{0, 1, f}, {1, 2, g}, {0, 2, g * f}});
    }
  }
}

TrialResult colimit_universal(std::uint64_t seed) {
  const Ring R = seed % 2 ? Ring::integers() : Ring::integers_mod(6);
  DeskGenerator gen(R, seed);
  int shape = gen.uniform(0, 3);
  auto d = random_diagram(gen, shape);
  auto c = colimit(d);
  TrialResult r;
  r.tallies[to_string(d.shape)] = 1;
  if (!is_cocone(d, c.cocone)) return TrialResult::fail("colimit legs are not a cocone");
  if (!c.quotient.is_degreewise_surjective())
    return TrialResult::fail("quotient is not surjective, so mediating maps need not be unique");

  auto y = gen.complex(0, 1, 2);
  auto u = gen.chain_map(c.complex, y);
  std::vector<ChainMap> legs;
  for (const auto& leg : c.cocone) legs.push_back(u * leg);
  auto med = mediating_map(d, c, legs);
  if (!med) return TrialResult::fail("no mediating map for a cocone through the colimit");
  if (!med->equals(u)) return TrialResult::fail("mediating map differs from the generating map");
  for (std::size_t k = 0; k < legs.size(); ++k)
    if (!(*med * c.cocone[k]).equals(legs[k])) return TrialResult::fail("mediating map does not commute");

  // a perturbed family has a mediating map exactly when it is still a cocone
  legs[0] = legs[0] + gen.chain_map(d.objects[0], y);
  bool cocone = is_cocone(d, legs);
  auto med2 = mediating_map(d, c, legs);
  r.tallies[cocone ? "perturbed cocone" : "perturbed non-cocone"] = 1;
  if (bool(med2) != cocone) return TrialResult::fail("mediating map exists for a non-cocone");
  if (med2)
    for (std::size_t k = 0; k < legs.size(); ++k)
      if (!(*med2 * c.cocone[k]).equals(legs[k]))
        return TrialResult::fail("perturbed mediating map does not commute");

  if (auto top = d.maximum()) {
    if (!c.cocone[*top].is_degreewise_isomorphism())
      return TrialResult::fail("colimit over a poset with a maximum is not the top object");
    for (auto f : {GradedFunctor::Z, GradedFunctor::B, GradedFunctor::C, GradedFunctor::H})
      if (!preservation_check(ComplexFunctor::graded(f), d).is_isomorphism)
        return TrialResult::fail("graded functor fails on a poset with a maximum");
  }
  return r;
}

TrialResult colimit_preservation(std::uint64_t seed) {
  const Ring R = seed % 2 ? Ring::integers() : Ring::integers_mod(6);
  DeskGenerator gen(R, seed);
  int shape = gen.uniform(0, 2);
  auto d = random_diagram(gen, shape);
  TrialResult r;
  r.tallies[to_string(d.shape)] = 1;

  auto n = gen.complex(0, 1, 2);
  auto p = gen.complex(0, 1, 2, R.kind() == RingKind::Integers ? Kind::Free : Kind::Projective);
  std::vector<ComplexFunctor> exact = {ComplexFunctor::tensor_with(n), ComplexFunctor::hom_from(p),
                                       ComplexFunctor::graded(GradedFunctor::C)};
  if (d.shape == DiagramShape::Coproduct)
    for (auto f : {GradedFunctor::Z, GradedFunctor::B, GradedFunctor::H})
      exact.push_back(ComplexFunctor::graded(f));
  for (const auto& f : exact)
    if (!preservation_check(f, d).is_isomorphism)
      return TrialResult::fail(f.name() + " does not preserve a " + to_string(d.shape));
  return r;
}

// --- serialization ------------------------------------------------------------

TrialResult json_roundtrip(std::uint64_t seed) {
  const Ring rings[] = {Ring::integers(), Ring::integers_mod(6), Ring::rationals()};
  const Ring& R = rings[seed % 3];
  DeskGenerator gen(R, seed);
  auto m = gen.complex(-1, 1, 2);
  auto n = gen.complex(-1, 1, 2);
  auto f = gen.chain_map(m, n);
  WorkspaceWriter w;
  std::string name = w.add("f", f);
  Json doc = w.json();
  auto ws = Workspace::from_json(parse_json_text(doc.dump()));
  if (!same_map(ws.map(name), f)) return TrialResult::fail("map changed across a round trip");
  WorkspaceWriter again;
  for (const auto& [k, c] : ws.complexes) again.add(k, c);
  again.add(name, ws.map(name));
  if (again.json() != doc) return TrialResult::fail("re-emitted document differs");
  return TrialResult::pass();
}

std::vector<Suite> make_suites() {
  std::vector<Suite> s;
  for (int q : {2, 6}) {
    std::string tag = "z" + std::to_string(q);
    std::string ring = "Z/" + std::to_string(q);
    s.push_back({"lift-oracle-" + tag, "lift_chain_map vs enumeration of all chain maps over " + ring,
                 500, [q](std::uint64_t seed) { return lift_oracle(finite_ring(q), seed); }});
    s.push_back({"contraction-oracle-" + tag,
                 "contraction vs brute-force splitting and homology over " + ring, 500,
                 [q](std::uint64_t seed) { return contraction_oracle(finite_ring(q), seed); }});
    s.push_back({"zhom-oracle-" + tag, "Z0 of total Hom vs enumerated chain maps over " + ring, 500,
                 [q](std::uint64_t seed) { return zhom_oracle(finite_ring(q), seed); }});
  }
  s.push_back({"canonical-z", "canonical morphisms are isomorphisms on perfect complexes over Z",
               200, [](std::uint64_t seed) { return canonical(Ring::integers(), seed); }});
  s.push_back({"canonical-z6", "canonical morphisms are isomorphisms on perfect complexes over Z/6",
               200, [](std::uint64_t seed) { return canonical(Ring::integers_mod(6), seed); }});
  s.push_back({"factorization-z6", "factorization through perfect complexes over Z/6", 100,
               factorization});
  s.push_back({"quasi-iso", "homology and cone routes to quasi-isomorphism agree", 500, quasi_iso});
  s.push_back({"colimit-universal", "universal property of computed colimits", 200,
               colimit_universal});
  s.push_back({"colimit-preservation", "tensor, Hom from perfect and C preserve finite colimits",
               200, colimit_preservation});
  s.push_back({"json-roundtrip", "serialized maps re-parse to identical values", 200,
               json_roundtrip});
  return s;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

SuiteReport run_suite(const Suite& suite, const RunOptions& options) {
  const std::size_t trials = options.trials ? options.trials : suite.default_trials;
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));

  std::vector<TrialResult> results(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      try {
        results[i] = suite.trial(trial_seed(options.seed, i));
      } catch (const std::exception& e) {
        results[i] = TrialResult::fail(std::string("exception: ") + e.what());
      }
    }
  };
  auto start = std::chrono::steady_clock::now();
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SuiteReport report;
  report.name = suite.name;
  report.seed = options.seed;
  report.trials = trials;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (std::size_t i = 0; i < trials; ++i) {
    const auto& r = results[i];
    switch (r.status) {
      case Status::Pass: ++report.passed; break;
      case Status::Skip: ++report.skipped; break;
      case Status::Fail:
        ++report.failed;
        if (report.failures.size() < options.failures_kept) {
          std::ostringstream out;
          out << "trial " << i << " (seed " << trial_seed(options.seed, i) << "): " << r.detail;
          report.failures.push_back(out.str());
        }
        break;
    }
    for (const auto& [k, v] : r.tallies) report.tallies[k] += v;
  }
  return report;
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = make_suites();
  return suites;
}

const Suite& find_suite(const std::string& name) {
  for (const auto& s : all_suites())
    if (s.name == name) return s;
  throw std::out_of_range("unknown suite '" + name + "'");
}

}  // namespace perfacto::properties

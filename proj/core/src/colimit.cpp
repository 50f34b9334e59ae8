#include "perfacto/colimit.hpp"

#include <future>

#include "perfacto/bifunctor.hpp"
#include "perfacto/errors.hpp"
#include "perfacto/system.hpp"

namespace perfacto {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionMismatch("diagram: " + what);
}

}  // namespace

std::string to_string(DiagramShape shape) {
  switch (shape) {
    case DiagramShape::Coproduct: return "coproduct";
    case DiagramShape::Coequalizer: return "coequalizer";
    case DiagramShape::Pushout: return "pushout";
    case DiagramShape::Poset: return "poset";
  }
  return "unknown";
}

FiniteDiagram FiniteDiagram::coproduct(std::vector<ChainComplex> objects) {
  FiniteDiagram d{DiagramShape::Coproduct, std::move(objects), {}};
  d.validate();
  return d;
}

FiniteDiagram FiniteDiagram::coequalizer(const ChainMap& f, const ChainMap& g) {
  FiniteDiagram d{DiagramShape::Coequalizer, {f.source(), f.target()}, {{0, 1, f}, {0, 1, g}}};
  d.validate();
  return d;
}

FiniteDiagram FiniteDiagram::pushout(const ChainMap& f, const ChainMap& g) {
  FiniteDiagram d{DiagramShape::Pushout, {f.source(), f.target(), g.target()}, {{0, 1, f}, {0, 2, g}}};
  d.validate();
  return d;
}

FiniteDiagram FiniteDiagram::poset(std::vector<ChainComplex> objects, std::vector<Arrow> arrows) {
  FiniteDiagram d{DiagramShape::Poset, std::move(objects), std::move(arrows)};
  d.validate();
  return d;
}

void FiniteDiagram::validate() const {
  require(!objects.empty(), "needs at least one object");
  const Ring& R = objects.front().ring();
  for (const auto& o : objects) require(o.ring() == R, "objects over different rings");
  for (const auto& a : arrows) {
    require(a.from < objects.size() && a.to < objects.size(), "arrow endpoint out of range");
    require(identical(a.map.source(), objects[a.from]), "arrow source differs from its object");
    require(identical(a.map.target(), objects[a.to]), "arrow target differs from its object");
  }
  switch (shape) {
    case DiagramShape::Coproduct:
      require(arrows.empty(), "a coproduct has no arrows");
      break;
    case DiagramShape::Coequalizer:
      require(objects.size() == 2 && arrows.size() == 2, "a coequalizer is a parallel pair");
      for (const auto& a : arrows) require(a.from == 0 && a.to == 1, "coequalizer arrows run 0 -> 1");
      break;
    case DiagramShape::Pushout:
      require(objects.size() == 3 && arrows.size() == 2, "a pushout is a span of two arrows");
      require(arrows[0].from == 0 && arrows[0].to == 1, "first pushout arrow runs 0 -> 1");
      require(arrows[1].from == 0 && arrows[1].to == 2, "second pushout arrow runs 0 -> 2");
      break;
    case DiagramShape::Poset:
      for (std::size_t x = 0; x < arrows.size(); ++x) {
        const auto& a = arrows[x];
        if (a.from == a.to)
          require(a.map.equals(ChainMap::identity(objects[a.from])), "loops must be identities");
        for (std::size_t y = 0; y < arrows.size(); ++y) {
          if (x == y) continue;
          const auto& b = arrows[y];
          if (a.from == b.from && a.to == b.to)
            require(a.map.equals(b.map), "parallel poset arrows must agree");
          if (a.to != b.from || a.from == a.to || b.from == b.to) continue;
          for (const auto& c : arrows)
            if (c.from == a.from && c.to == b.to)
              require(c.map.equals(b.map * a.map), "poset triangle does not commute");
        }
      }
      break;
  }
}

std::optional<std::size_t> FiniteDiagram::maximum() const {
  if (shape != DiagramShape::Poset) return std::nullopt;
  for (std::size_t m = 0; m < objects.size(); ++m) {
    bool top = true;
    for (std::size_t k = 0; k < objects.size() && top; ++k) {
      if (k == m) continue;
      bool found = false;
      for (const auto& a : arrows) found = found || (a.from == k && a.to == m);
      top = found;
    }
    if (top) return m;
  }
  return std::nullopt;
}

Colimit colimit(const FiniteDiagram& d) {
  d.validate();
  ComplexSum sum = direct_sum(d.objects);
  ChainMap to_quotient = ChainMap::identity(sum.complex);
  if (!d.arrows.empty()) {
    std::vector<ChainComplex> sources;
    for (const auto& a : d.arrows) sources.push_back(d.objects[a.from]);
    ComplexSum rels = direct_sum(sources);
    ChainMap phi = ChainMap::zero(rels.complex, sum.complex);
    for (std::size_t k = 0; k < d.arrows.size(); ++k) {
      const auto& a = d.arrows[k];
      phi = phi + (sum.inclusions[a.to] * a.map - sum.inclusions[a.from]) * rels.projections[k];
    }
    to_quotient = cokernel_complex(phi);
  }
  SimplifiedComplex s = simplify(to_quotient.target());
  ChainMap quotient = s.to * to_quotient;
  std::vector<ChainMap> cocone;
  for (const auto& inc : sum.inclusions) cocone.push_back(quotient * inc);
  return {s.complex, std::move(cocone), quotient};
}

bool is_cocone(const FiniteDiagram& d, const std::vector<ChainMap>& legs) {
  if (legs.size() != d.objects.size()) return false;
  for (std::size_t k = 0; k < legs.size(); ++k)
    if (!identical(legs[k].source(), d.objects[k]) ||
        !identical(legs[k].target(), legs.front().target()))
      return false;
  for (const auto& a : d.arrows)
    if (!(legs[a.to] * a.map).equals(legs[a.from])) return false;
  return true;
}

std::optional<ChainMap> mediating_map(const FiniteDiagram& d, const Colimit& c,
                                      const std::vector<ChainMap>& legs) {
  if (!is_cocone(d, legs)) return std::nullopt;
  const ChainComplex& y = legs.front().target();
  ComplexSum sum = direct_sum(d.objects);
  ChainMap g = ChainMap::zero(sum.complex, y);
  for (std::size_t k = 0; k < legs.size(); ++k) g = g + legs[k] * sum.projections[k];
  std::map<int, ModuleMorphism> comps;
  for (int v = c.complex.lo(); v <= c.complex.hi(); ++v) {
    if (!y.in_support(v)) continue;
    auto u = descend(g.component(v), c.quotient.component(v));
    if (!u) throw Error("internal: cocone does not descend to the colimit");
    comps.emplace(v, *u);
  }
  return ChainMap(c.complex, y, std::move(comps));
}

ComplexFunctor ComplexFunctor::graded(GradedFunctor f) {
  switch (f) {
    case GradedFunctor::Z: return {Kind::Z, std::nullopt};
    case GradedFunctor::B: return {Kind::B, std::nullopt};
    case GradedFunctor::C: return {Kind::C, std::nullopt};
    case GradedFunctor::H: return {Kind::H, std::nullopt};
  }
  throw Error("unknown graded functor");
}

ComplexFunctor ComplexFunctor::tensor_with(const ChainComplex& n) { return {Kind::TensorWith, n}; }
ComplexFunctor ComplexFunctor::hom_from(const ChainComplex& p) { return {Kind::HomFrom, p}; }

namespace {

GradedFunctor graded_kind(ComplexFunctor::Kind k) {
  switch (k) {
    case ComplexFunctor::Kind::Z: return GradedFunctor::Z;
    case ComplexFunctor::Kind::B: return GradedFunctor::B;
    case ComplexFunctor::Kind::C: return GradedFunctor::C;
    default: return GradedFunctor::H;
  }
}

}  // namespace

ChainComplex ComplexFunctor::apply(const ChainComplex& m) const {
  switch (kind) {
    case Kind::TensorWith: return total_tensor(m, *argument).complex;
    case Kind::HomFrom: return total_hom(*argument, m).complex;
    default: return piece(zbhc(m), graded_kind(kind));
  }
}

ChainMap ComplexFunctor::apply(const ChainMap& f) const {
  switch (kind) {
    case Kind::TensorWith: return tensor_left(f, *argument);
    case Kind::HomFrom: return hom_right(*argument, f);
    default: return zbhc_map(f, graded_kind(kind));
  }
}

std::string ComplexFunctor::name() const {
  switch (kind) {
    case Kind::Z: return "Z";
    case Kind::B: return "B";
    case Kind::C: return "C";
    case Kind::H: return "H";
    case Kind::TensorWith: return "TensorWith(" + argument->describe() + ")";
    case Kind::HomFrom: return "HomFrom(" + argument->describe() + ")";
  }
  return "?";
}

PreservationReport preservation_check(const ComplexFunctor& functor, const FiniteDiagram& d) {
  if (functor.kind == ComplexFunctor::Kind::HomFrom) {
    const ChainComplex& p = *functor.argument;
    for (int v = p.lo(); v <= p.hi(); ++v)
      if (!flatness(p.component(v)).projective)
        throw HypothesisViolation("HomFrom needs finitely generated projective components; degree " +
                                  std::to_string(v) + " is " + p.component(v).describe());
  }
  Colimit c = colimit(d);
  FiniteDiagram fd{d.shape, {}, {}};
  for (const auto& o : d.objects) fd.objects.push_back(functor.apply(o));
  for (const auto& a : d.arrows) fd.arrows.push_back({a.from, a.to, functor.apply(a.map)});
  Colimit fc = colimit(fd);
  std::vector<ChainMap> legs;
  for (const auto& leg : c.cocone) legs.push_back(functor.apply(leg));
  auto u = mediating_map(fd, fc, legs);
  if (!u) throw Error("internal: functor image of the cocone is not a cocone");
  bool iso = u->is_degreewise_isomorphism();
  return {*u, iso};
}

LiftOutcome lift_chain_map(const ChainMap& phi, const ChainMap& alpha) {
  if (!identical(phi.target(), alpha.target()))
    throw DimensionMismatch("lift_chain_map: phi and alpha need a common target");
  const ChainComplex& n = phi.source();
  const ChainComplex& x = alpha.source();
  const Ring& R = n.ring();
  MorphismSystem sys(R);
  std::map<int, std::size_t> unknown;
  for (int v = n.lo(); v <= n.hi(); ++v) unknown.emplace(v, sys.add_unknown(n.component(v), x.component(v)));
  for (int v = n.lo(); v <= n.hi(); ++v) {
    const auto& nv = n.component(v);
    if (nv.generators() == 0) continue;
    const auto& below = x.component(v - 1);
    if (below.generators() > 0) {
      std::vector<MorphismSystem::Term> terms{
          {unknown.at(v), x.differential(v).action(), Matrix::identity(R, nv.generators())}};
      if (unknown.count(v - 1))
        terms.push_back({unknown.at(v - 1), -Matrix::identity(R, below.generators()),
                         n.differential(v).action()});
      sys.add_equation(below, std::move(terms), Matrix(R, below.generators(), nv.generators()));
    }
    const auto& yv = alpha.target().component(v);
    if (yv.generators() > 0)
      sys.add_equation(yv,
                       {{unknown.at(v), alpha.component(v).action(),
                         Matrix::identity(R, nv.generators())}},
                       phi.component(v).action());
  }
  auto [a, b] = sys.flatten();
  LiftOutcome out{std::nullopt, std::nullopt, a, b};
  auto result = sys.solve();
  if (!result) {
    out.obstruction = result.obstruction;
    return out;
  }
  std::map<int, Matrix> actions;
  for (const auto& [v, k] : unknown) actions.emplace(v, (*result.unknowns)[k]);
  out.lift = ChainMap::from_actions(n, x, actions);
  return out;
}

std::vector<Probe> standard_probes(const ChainComplex& y, int lo, int hi) {
  const Ring& R = y.ring();
  const PresentedModule r = PresentedModule::free(R, 1);
  std::vector<Probe> probes;
  GradedPieces pieces = zbhc(y);
  for (int v = lo; v <= hi; ++v) {
    if (!y.in_support(v)) continue;
    const auto& yv = y.component(v);
    ChainComplex d = disc(v, r);
    for (std::size_t j = 0; j < yv.generators(); ++j) {
      Matrix e = Matrix::unit_column(R, yv.generators(), j);
      if (yv.is_trivial_element(e)) continue;
      probes.push_back({d, ChainMap::from_actions(
                               d, y, {{v, e}, {v - 1, y.differential(v).action() * e}})});
    }
    ChainComplex sphere = ChainComplex::concentrated(r, v);
    Matrix cycles = pieces.cycles_in.at(v).action();
    for (std::size_t j = 0; j < cycles.cols(); ++j) {
      Matrix z = cycles.col(j);
      if (yv.is_trivial_element(z)) continue;
      probes.push_back({sphere, ChainMap::from_actions(sphere, y, {{v, z}})});
    }
  }
  return probes;
}

std::vector<Probe> standard_probes(const ChainComplex& y) { return standard_probes(y, y.lo(), y.hi()); }

PurityVerdict is_pure_epi(const ChainMap& alpha, const std::vector<Probe>& probes) {
  std::vector<std::future<LiftOutcome>> jobs;
  for (const auto& p : probes)
    jobs.push_back(std::async(std::launch::async, [&alpha, &p] { return lift_chain_map(p.map, alpha); }));
  std::vector<LiftOutcome> outcomes;
  for (auto& j : jobs) outcomes.push_back(j.get());
  PurityVerdict verdict;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (!outcomes[k]) {
      verdict.counterexample = PurityVerdict::Counterexample{k, probes[k], std::move(outcomes[k])};
      verdict.lifts.clear();
      return verdict;
    }
    verdict.lifts.push_back(*outcomes[k].lift);
  }
  verdict.pure = true;
  return verdict;
}

}  // namespace perfacto

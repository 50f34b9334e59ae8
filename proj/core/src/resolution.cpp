#include "perfacto/resolution.hpp"

#include <set>

#include "perfacto/bifunctor.hpp"
#include "perfacto/errors.hpp"
#include "perfacto/system.hpp"

namespace perfacto {

namespace {

struct Cover {
  ChainComplex complex;
  ChainMap map;
};

// Sum of discs disc(v, R^{g_v}) mapping onto each generator of m.
Cover cover_by_discs(const ChainComplex& m) {
  const Ring& R = m.ring();
  std::vector<ChainComplex> discs;
  std::vector<ChainMap> maps;
  for (int v = m.lo(); v <= m.hi(); ++v) {
    const auto& mv = m.component(v);
    if (mv.generators() == 0) continue;
    PresentedModule f = PresentedModule::free(R, mv.generators());
    maps.push_back(disc_surjection(
        ModuleMorphism(f, mv, Matrix::identity(R, mv.generators())), m, v));
    discs.push_back(maps.back().source());
  }
  if (discs.empty()) {
    ChainComplex zero = ChainComplex::zero(R);
    return {zero, ChainMap::zero(zero, m)};
  }
  ComplexSum sum = direct_sum(discs);
  ChainMap total = ChainMap::zero(sum.complex, m);
  for (std::size_t k = 0; k < maps.size(); ++k) total = total + maps[k] * sum.projections[k];
  return {sum.complex, total};
}

bool perfect(const ChainComplex& c) {
  for (int v = c.lo(); v <= c.hi(); ++v)
    if (!c.component(v).is_free_presentation()) return false;
  return true;
}

// The subcomplex of a degreewise free complex spanned by the given basis
// elements, which must be closed under the differential.
ChainMap basis_subcomplex(const ChainComplex& p, const std::map<int, std::vector<std::size_t>>& basis) {
  const Ring& R = p.ring();
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& [v, b] : basis) {
    if (b.empty()) continue;
    lo = any ? std::min(lo, v) : v;
    hi = any ? std::max(hi, v) : v;
    any = true;
  }
  auto chosen = [&](int v) {
    auto it = basis.find(v);
    return it == basis.end() ? std::vector<std::size_t>{} : it->second;
  };
  std::vector<PresentedModule> mods;
  for (int v = lo; v <= hi; ++v) mods.push_back(PresentedModule::free(R, chosen(v).size()));
  std::vector<ModuleMorphism> diffs;
  for (int v = lo + 1; v <= hi; ++v) {
    auto rows = chosen(v - 1), cols = chosen(v);
    Matrix d = p.differential(v).action().select_cols(cols);
    Matrix restricted = d.select_rows(rows);
    // closure: the discarded rows must vanish
    Matrix back(R, d.rows(), rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) back.set(rows[k], k, R.one());
    if (back * restricted != d) throw Error("internal: basis subset is not closed under d");
    diffs.push_back(ModuleMorphism(mods[v - lo], mods[v - lo - 1], restricted));
  }
  ChainComplex sub(R, lo, mods, diffs);
  std::map<int, ModuleMorphism> incl;
  for (int v = lo; v <= hi; ++v) {
    auto rows = chosen(v);
    Matrix e(R, p.component(v).generators(), rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) e.set(rows[k], k, R.one());
    incl.emplace(v, ModuleMorphism(sub.component(v), p.component(v), e));
  }
  return ChainMap(sub, p, std::move(incl));
}

}  // namespace

ChainMap disc_surjection(const ModuleMorphism& pi, const ChainComplex& m, int v) {
  if (!pi.source().is_free_presentation())
    throw HypothesisViolation("disc_surjection needs a free source module");
  if (!(pi.target() == m.component(v)))
    throw DimensionMismatch("disc_surjection: the map must land in the degree-v component");
  ChainComplex d = disc(v, pi.source());
  std::map<int, ModuleMorphism> comps;
  comps.emplace(v, ModuleMorphism(d.component(v), m.component(v), pi.action()));
  comps.emplace(v - 1, ModuleMorphism(d.component(v - 1), m.component(v - 1),
                                      m.differential(v).action() * pi.action()));
  return ChainMap(d, m, std::move(comps));
}

bool ComplexPresentation::is_exact() const {
  if (!psi0.is_degreewise_surjective()) return false;
  if (!(psi0 * psi1).is_zero()) return false;
  const ChainComplex& l0 = L0;
  for (int v = l0.lo(); v <= l0.hi(); ++v) {
    MorphismData k = kernel(psi0.component(v));
    // ker(psi0) inside im(psi1): each kernel generator is psi1 of something
    Matrix im = hstack(psi1.component(v).action(), l0.component(v).relations());
    if (!in_column_span(im, k.map.action())) return false;
  }
  return true;
}

ComplexPresentation present_complex(const ChainComplex& m) {
  Cover top = cover_by_discs(m);
  ChainMap k = kernel_complex(top.map);
  Cover next = cover_by_discs(k.source());
  return {next.complex, top.complex, k * next.map, top.map};
}

SemifreeResolution semifree_resolution(const ChainComplex& m, int ceiling) {
  const Ring& R = m.ring();
  if (m.is_zero()) {
    ChainComplex zero = ChainComplex::zero(R);
    return {zero, ChainMap::zero(zero, m), 0, ceiling};
  }
  const int lo = m.inf();
  if (ceiling < m.sup())
    throw HypothesisViolation("semifree_resolution: ceiling " + std::to_string(ceiling) +
                              " is below the top degree " + std::to_string(m.sup()));
  std::vector<PresentedModule> mods;
  std::vector<ModuleMorphism> diffs;
  std::map<int, Matrix> pi;
  auto p_at = [&](int v) {
    return (v >= lo && v - lo < static_cast<int>(mods.size())) ? mods[v - lo]
                                                                : PresentedModule::zero(R);
  };
  auto d_at = [&](int v) {  // d^P_v as a matrix, zero outside what is built
    if (v - 1 >= lo && v - lo < static_cast<int>(mods.size())) return diffs[v - lo - 1].action();
    return Matrix(R, p_at(v - 1).generators(), p_at(v).generators());
  };
  auto pi_at = [&](int v) {
    auto it = pi.find(v);
    return it != pi.end() ? it->second
                          : Matrix(R, m.component(v).generators(), p_at(v).generators());
  };
  for (int v = lo; v <= ceiling; ++v) {
    PresentedModule below = p_at(v - 1);
    DirectSum source = direct_sum({below, m.component(v)});
    DirectSum target = direct_sum({p_at(v - 2), m.component(v - 1)});
    Matrix f(R, target.module.generators(), source.module.generators());
    f.paste(0, 0, d_at(v - 1));
    f.paste(target.offsets[1], 0, pi_at(v - 1));
    f.paste(target.offsets[1], source.offsets[1], -m.differential(v).action());
    MorphismData k = kernel(ModuleMorphism(source.module, target.module, f));
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < k.map.action().cols(); ++j)
      if (!source.module.is_trivial_element(k.map.action().col(j))) keep.push_back(j);
    Matrix gens = k.map.action().select_cols(keep);
    PresentedModule pv = PresentedModule::free(R, gens.cols());
    Matrix z = gens.block(0, 0, below.generators(), gens.cols());
    Matrix mm = gens.block(source.offsets[1], 0, m.component(v).generators(), gens.cols());
    mods.push_back(pv);
    if (v > lo) diffs.push_back(ModuleMorphism(pv, below, z));
    pi.emplace(v, mm);
  }
  ChainComplex p(R, lo, mods, diffs);
  std::map<int, ModuleMorphism> comps;
  for (int v = std::max(lo, m.lo()); v <= std::min(ceiling, m.hi()); ++v)
    comps.emplace(v, ModuleMorphism(p.component(v), m.component(v), pi.at(v)));
  return {p, ChainMap(p, m, std::move(comps)), lo, ceiling};
}

bool Contraction::verify() const {
  const ChainComplex& c = sigma.source;
  for (int v = c.lo(); v <= c.hi(); ++v) {
    ModuleMorphism d = c.differential(v);
    if (!(d * sigma.component(v - 1) * d).equals(d)) return false;
  }
  return sigma.boundary().equals(ChainMap::identity(c));
}

std::optional<Contraction> contraction(const ChainComplex& c) {
  // d = d sigma d alone only says that C is split; a null homotopy of the
  // identity also satisfies it and exists exactly when C is contractible.
  auto h = null_homotopy(c);
  if (!h) return std::nullopt;
  Contraction out{*h};
  if (!out.verify()) throw Error("internal: contraction fails d = d sigma d");
  return out;
}

std::optional<Homotopy> null_homotopy(const ChainComplex& c) {
  const Ring& R = c.ring();
  MorphismSystem sys(R);
  std::map<int, std::size_t> unknown;
  for (int v = c.lo(); v < c.hi(); ++v)
    unknown.emplace(v, sys.add_unknown(c.component(v), c.component(v + 1)));
  for (int v = c.lo(); v <= c.hi(); ++v) {
    const auto& here = c.component(v);
    const std::size_t g = here.generators();
    if (g == 0) continue;
    std::vector<MorphismSystem::Term> terms;
    if (unknown.count(v)) terms.push_back({unknown.at(v), c.differential(v + 1).action(), Matrix::identity(R, g)});
    if (unknown.count(v - 1)) terms.push_back({unknown.at(v - 1), Matrix::identity(R, g), c.differential(v).action()});
    if (terms.empty()) {
      if (!here.is_zero()) return std::nullopt;
      continue;
    }
    sys.add_equation(here, std::move(terms), Matrix::identity(R, g));
  }
  auto result = sys.solve();
  if (!result) return std::nullopt;
  std::map<int, ModuleMorphism> comps;
  for (const auto& [v, k] : unknown)
    comps.emplace(v, ModuleMorphism(c.component(v), c.component(v + 1), (*result.unknowns)[k]));
  Homotopy h{c, c, std::move(comps)};
  if (!h.boundary().equals(ChainMap::identity(c)))
    throw Error("internal: null homotopy fails d h + h d = id");
  return h;
}

bool FactorizationCertificate::verify(const ChainMap& phi) const {
  return perfect(L) && (lambda * kappa).equals(phi);
}

namespace {

struct CycleSearch {
  SemifreeResolution resolution;
  TotalTensor tensor;
  Matrix x;
};

std::optional<CycleSearch> find_cycle(const ChainMap& kernel_inclusion, const ChainComplex& l0,
                                      const ChainComplex& f, const Matrix& target, int ceiling) {
  const ChainComplex& k = kernel_inclusion.source();
  const Ring& R = f.ring();
  if (!k.is_zero() && ceiling < k.sup()) return std::nullopt;
  SemifreeResolution res = semifree_resolution(k, ceiling);
  TotalTensor t = total_tensor(res.P, f);
  ChainMap g = xi(l0, f) * tensor_left(kernel_inclusion * res.pi, f);
  const auto& t0 = t.complex.component(0);
  const auto& below = t.complex.component(-1);
  const auto& goal = g.target().component(0);
  if (t0.generators() == 0) {
    if (!goal.is_trivial_element(target)) return std::nullopt;
    return CycleSearch{res, t, Matrix(R, 0, 1)};
  }
  MorphismSystem sys(R);
  PresentedModule one = PresentedModule::free(R, 1);
  std::size_t x = sys.add_unknown(one, t0);
  Matrix id1 = Matrix::identity(R, 1);
  if (below.generators() > 0)
    sys.add_equation(below, {{x, t.complex.differential(0).action(), id1}},
                     Matrix(R, below.generators(), 1));
  if (goal.generators() > 0) sys.add_equation(goal, {{x, g.component(0).action(), id1}}, target);
  auto result = sys.solve();
  if (!result) return std::nullopt;
  return CycleSearch{res, t, (*result.unknowns)[0]};
}

}  // namespace

FactorizationCertificate factor_through_perfect(const ChainMap& phi,
                                                const FactorizationOptions& options) {
  const ChainComplex& n = phi.source();
  const ChainComplex& f = phi.target();
  const Ring& R = n.ring();
  for (int v = f.lo(); v <= f.hi(); ++v)
    if (!flatness(f.component(v)).flat)
      throw HypothesisViolation("factor_through_perfect needs a degreewise flat target; degree " +
                                std::to_string(v) + " is " + f.component(v).describe());
  const ChainComplex r = unit_complex(R);

  // (1) present N, (2) dualize psi1 and take its kernel
  ComplexPresentation pres = present_complex(n);
  const ChainComplex& l0 = pres.L0;
  ChainMap dual_psi1 = hom_left(pres.psi1, r);
  ChainMap iota = kernel_complex(dual_psi1);
  const ChainComplex& k = iota.source();

  // (3)-(4) resolve K on a growing window and solve for the cycle x
  TotalHom hom_l0_f = total_hom(l0, f);
  Matrix target = hom_l0_f.from_chain_map(phi * pres.psi0);
  int top = std::max(k.is_zero() ? 0 : k.sup(), f.is_zero() ? 0 : -f.inf());
  int margin = options.initial_margin;
  std::optional<CycleSearch> found;
  int rounds = 0;
  while (!found && rounds < options.max_rounds) {
    ++rounds;
    found = find_cycle(iota, l0, f, target, top + margin);
    margin = std::max(1, 2 * margin);
  }
  if (!found)
    throw WindowExhausted("factor_through_perfect: no cycle found after " + std::to_string(rounds) +
                          " rounds (ceiling " + std::to_string(top + margin / 2) + ")");
  const ChainComplex& p = found->resolution.P;
  const TotalTensor& t = found->tensor;

  // (5) the finite subcomplex P' of basis elements supporting x
  std::map<int, std::set<std::size_t>> support;
  const Matrix& x = found->x;
  for (std::size_t g = 0; g < x.rows(); ++g) {
    if (R.is_zero(x(g, 0))) continue;
    for (const auto& s : t.summands.at(0)) {
      std::size_t size = s.tensor.module.generators();
      if (g < s.offset || g >= s.offset + size) continue;
      support[s.i].insert((g - s.offset) / s.tensor.right.generators());
    }
  }
  if (!support.empty()) {
    for (int v = support.rbegin()->first; v > p.lo(); --v) {
      Matrix d = p.differential(v).action();
      for (std::size_t e : support[v])
        for (std::size_t row = 0; row < d.rows(); ++row)
          if (!R.is_zero(d(row, e))) support[v - 1].insert(row);
    }
  }
  std::map<int, std::vector<std::size_t>> basis;
  for (const auto& [v, s] : support) basis[v] = std::vector<std::size_t>(s.begin(), s.end());
  ChainMap eps = basis_subcomplex(p, basis);
  const ChainComplex& p_prime = eps.source();

  // x as an element of (P' (x) F)_0
  TotalTensor t_prime = total_tensor(p_prime, f);
  Matrix x_prime(R, t_prime.complex.component(0).generators(), 1);
  for (const auto& s : t_prime.summands.count(0) ? t_prime.summands.at(0)
                                                 : std::vector<TotalTensor::Summand>{}) {
    const auto* big = t.find(0, s.i);
    const auto& rows = basis.at(s.i);
    std::size_t width = s.tensor.right.generators();
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < width; ++b)
        x_prime.set(s.offset + a * width + b, 0, x(big->offset + rows[a] * width + b, 0));
  }
  ChainMap eps_f = tensor_left(eps, f);
  if (t.complex.component(0).generators() > 0 &&
      !t.complex.component(0).same_element(eps_f.component(0).apply(x_prime), x))
    throw Error("internal: x does not lie in P' (x) F");

  // (6) L = Hom(P', R), kappa' = Hom(iota pi eps, R) delta_{L0}, kappa with kappa psi0 = kappa'
  ChainMap iota_pi_eps = iota * found->resolution.pi * eps;
  ChainMap kappa_prime = hom_left(iota_pi_eps, r) * biduality_map(l0);
  const ChainComplex l = kappa_prime.target();
  if (!(kappa_prime * pres.psi1).is_zero()) throw Error("internal: kappa' psi1 is not zero");
  std::map<int, ModuleMorphism> kappa_comps;
  for (int v = n.lo(); v <= n.hi(); ++v) {
    if (!l.in_support(v)) continue;
    auto c = descend(kappa_prime.component(v), pres.psi0.component(v));
    if (!c) throw Error("internal: kappa' does not descend along psi0");
    kappa_comps.emplace(v, *c);
  }
  ChainMap kappa(n, l, std::move(kappa_comps));

  // lambda = xi^L((delta_{P'} (x) F)(x))
  ChainMap to_hom = xi(l, f) * tensor_left(biduality_map(p_prime), f);
  TotalHom hom_l_f = total_hom(l, f);
  Matrix lambda_coords = t_prime.complex.component(0).generators() > 0
                             ? to_hom.component(0).apply(x_prime)
                             : Matrix(R, hom_l_f.complex.component(0).generators(), 1);
  ChainMap lambda = hom_l_f.to_chain_map(lambda_coords);

  // (7) verification: naturality square, then the factorization itself
  ChainMap upper = hom_left(kappa_prime, f) * xi(l, f);
  ChainMap lower = xi(l0, f) * tensor_left(hom_left(kappa_prime, r), f);
  if (!upper.equals(lower)) throw Error("internal: naturality square of xi fails");

  FactorizationTrace trace{pres,  iota,     found->resolution, rounds, x,
                           p_prime, eps,    kappa_prime};
  FactorizationCertificate cert{l, kappa, lambda, std::move(trace)};
  if (!cert.verify(phi)) throw Error("internal: factorization does not reproduce phi");
  return cert;
}

ContractibleFactorization factor_through_contractible(const ChainMap& phi) {
  const ChainComplex& n = phi.source();
  const ChainComplex& c = phi.target();
  const Ring& R = c.ring();
  for (int v = c.lo(); v <= c.hi(); ++v)
    if (!flatness(c.component(v)).projective)
      throw HypothesisViolation("factor_through_contractible needs projective components; degree " +
                                std::to_string(v) + " is " + c.component(v).describe());
  if (!contraction(c)) throw HypothesisViolation("factor_through_contractible: target is not contractible");

  // discs from the top down, adding one only where the map is not yet onto
  std::vector<ChainComplex> discs;
  std::vector<ChainMap> maps;
  auto current = [&]() -> std::optional<ChainMap> {
    if (discs.empty()) return std::nullopt;
    ComplexSum sum = direct_sum(discs);
    ChainMap total = ChainMap::zero(sum.complex, c);
    for (std::size_t k = 0; k < maps.size(); ++k) total = total + maps[k] * sum.projections[k];
    return total;
  };
  for (int v = c.hi(); v >= c.lo(); --v) {
    const auto& cv = c.component(v);
    if (cv.is_zero()) continue;
    auto sofar = current();
    if (sofar && sofar->component(v).is_surjective()) continue;
    PresentedModule free = PresentedModule::free(R, cv.generators());
    maps.push_back(
        disc_surjection(ModuleMorphism(free, cv, Matrix::identity(R, cv.generators())), c, v));
    discs.push_back(maps.back().source());
  }
  auto lambda = current();
  if (!lambda) {
    ChainComplex zero = ChainComplex::zero(R);
    return {zero, ChainMap::zero(n, zero), ChainMap::zero(zero, c)};
  }
  LiftOutcome lift = lift_chain_map(phi, *lambda);
  if (!lift) throw Error("internal: no lift through the disc cover of a contractible complex");
  return {lambda->source(), *lift.lift, *lambda};
}

AcyclicSemiflatReport classify_acyclic_semiflat(const ChainComplex& f) {
  AcyclicSemiflatReport report;
  report.acyclic = is_acyclic(f);
  GradedPieces pieces = zbhc(f);
  report.boundaries_flat = true;
  for (int v = pieces.B.lo(); v <= pieces.B.hi(); ++v)
    report.boundaries_flat = report.boundaries_flat && flatness(pieces.B.component(v)).flat;
  report.degreewise_projective = true;
  for (int v = f.lo(); v <= f.hi(); ++v)
    report.degreewise_projective = report.degreewise_projective && flatness(f.component(v)).projective;
  if (report.acyclic && report.degreewise_projective) {
    report.contraction = contraction(f);
    if (!report.contraction)
      throw Error("internal: bounded acyclic complex of projectives without a contraction");
  }
  return report;
}

SemiProjectiveVerdict is_semi_projective_probe(const ChainComplex& p,
                                               const std::vector<SemiProjectiveProbe>& probes) {
  for (const auto& probe : probes)
    if (!identical(probe.alpha.source(), p))
      throw DimensionMismatch("semi-projectivity probe does not start at P");
  for (const auto& probe : probes)
    if (!probe.beta.is_degreewise_surjective() || !is_quasi_iso(probe.beta))
      throw HypothesisViolation("semi-projectivity probes need a surjective quasi-isomorphism");
  SemiProjectiveVerdict verdict;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    LiftOutcome out = lift_chain_map(probes[k].alpha, probes[k].beta);
    if (!out) {
      verdict.lifts.clear();
      verdict.failing_probe = k;
      verdict.failure = std::move(out);
      return verdict;
    }
    verdict.lifts.push_back(*out.lift);
  }
  verdict.holds = true;
  return verdict;
}

bool is_semi_flat_desk(const ChainComplex& f) {
  for (int v = f.lo(); v <= f.hi(); ++v)
    if (!flatness(f.component(v)).flat) return false;
  return true;
}

}  // namespace perfacto

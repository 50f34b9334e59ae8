#include "perfacto/complex.hpp"

#include <algorithm>
#include <sstream>

#include "perfacto/errors.hpp"

namespace perfacto {

namespace {

ModuleMorphism lookup(const std::map<int, ModuleMorphism>& maps, int v,
                      const PresentedModule& source, const PresentedModule& target) {
  auto it = maps.find(v);
  if (it != maps.end()) return it->second;
  return ModuleMorphism::zero(source, target);
}

ChainComplex zero_differential_complex(const Ring& ring, int lo,
                                       const std::vector<PresentedModule>& modules) {
  std::vector<ModuleMorphism> diffs;
  for (std::size_t k = 0; k + 1 < modules.size(); ++k)
    diffs.push_back(ModuleMorphism::zero(modules[k + 1], modules[k]));
  return ChainComplex(ring, lo, modules, diffs);
}

std::string degree_label(int v) { return "degree " + std::to_string(v); }

}  // namespace

// ---------------------------------------------------------------------------
// ChainComplex

ChainComplex::ChainComplex(Ring ring, int lo, std::vector<PresentedModule> modules,
                           std::vector<ModuleMorphism> differentials)
    : ring_(std::move(ring)),
      lo_(lo),
      hi_(lo + static_cast<int>(modules.size()) - 1),
      modules_(std::move(modules)),
      differentials_(std::move(differentials)),
      zero_module_(PresentedModule::zero(ring_)) {
  std::size_t expected = modules_.empty() ? 0 : modules_.size() - 1;
  if (differentials_.size() != expected)
    throw DimensionMismatch("complex with " + std::to_string(modules_.size()) + " modules needs " +
                            std::to_string(expected) + " differentials");
  for (const auto& m : modules_)
    if (m.ring() != ring_) throw DimensionMismatch("complex component over a different ring");
  for (std::size_t k = 0; k < differentials_.size(); ++k) {
    const auto& d = differentials_[k];
    if (!(d.source() == modules_[k + 1]) || !(d.target() == modules_[k]))
      throw DimensionMismatch("differential in " + degree_label(lo_ + static_cast<int>(k) + 1) +
                              " does not connect the adjacent components");
  }
  for (std::size_t k = 0; k + 1 < differentials_.size(); ++k) {
    if (!(differentials_[k] * differentials_[k + 1]).is_zero()) {
      int v = lo_ + static_cast<int>(k) + 2;
      throw NotAComplex(v, "d(" + std::to_string(v - 1) + ") * d(" + std::to_string(v) +
                               ") != 0: composite action " +
                               (differentials_[k].action() * differentials_[k + 1].action())
                                   .to_string());
    }
  }
}

ChainComplex ChainComplex::zero(const Ring& ring) { return ChainComplex(ring, 0, {}, {}); }

ChainComplex ChainComplex::concentrated(const PresentedModule& m, int v) {
  return ChainComplex(m.ring(), v, {m}, {});
}

const PresentedModule& ChainComplex::component(int v) const {
  return in_support(v) ? modules_[v - lo_] : zero_module_;
}

ModuleMorphism ChainComplex::differential(int v) const {
  if (in_support(v) && in_support(v - 1)) return differentials_[v - lo_ - 1];
  return ModuleMorphism::zero(component(v), component(v - 1));
}

bool ChainComplex::is_zero() const {
  return std::all_of(modules_.begin(), modules_.end(),
                     [](const PresentedModule& m) { return m.is_zero(); });
}

bool ChainComplex::is_degreewise_free_presented() const {
  return std::all_of(modules_.begin(), modules_.end(),
                     [](const PresentedModule& m) { return m.is_free_presentation(); });
}

int ChainComplex::inf() const {
  for (int v = lo_; v <= hi_; ++v)
    if (!component(v).is_zero()) return v;
  return hi_ + 1;
}

int ChainComplex::sup() const {
  for (int v = hi_; v >= lo_; --v)
    if (!component(v).is_zero()) return v;
  return lo_ - 1;
}

std::string ChainComplex::describe() const {
  if (lo_ > hi_) return "0";
  std::ostringstream out;
  for (int v = hi_; v >= lo_; --v) {
    out << component(v).describe() << "@" << v;
    if (v > lo_) out << " -> ";
  }
  return out.str();
}

ChainComplex make_complex(const Ring& ring, int lo, int hi,
                          const std::map<int, PresentedModule>& modules,
                          const std::map<int, Matrix>& differentials) {
  if (hi < lo) {
    if (!modules.empty() || !differentials.empty())
      throw DimensionMismatch("empty support with nonempty data");
    return ChainComplex(ring, lo, {}, {});
  }
  for (const auto& [v, m] : modules)
    if (v < lo || v > hi) throw DimensionMismatch("module outside the support at " + degree_label(v));
  std::vector<PresentedModule> mods;
  for (int v = lo; v <= hi; ++v) {
    auto it = modules.find(v);
    mods.push_back(it == modules.end() ? PresentedModule::zero(ring) : it->second);
  }
  for (const auto& [v, d] : differentials)
    if (v <= lo || v > hi)
      throw DimensionMismatch("differential outside the support at " + degree_label(v));
  std::vector<ModuleMorphism> diffs;
  for (int v = lo + 1; v <= hi; ++v) {
    const auto& src = mods[v - lo];
    const auto& tgt = mods[v - lo - 1];
    auto it = differentials.find(v);
    if (it == differentials.end())
      diffs.push_back(ModuleMorphism::zero(src, tgt));
    else
      diffs.push_back(ModuleMorphism(src, tgt, it->second));
  }
  return ChainComplex(ring, lo, mods, diffs);
}

// ---------------------------------------------------------------------------
// ChainMap

ChainMap::ChainMap(ChainComplex source, ChainComplex target,
                   std::map<int, ModuleMorphism> components, Trusted)
    : source_(std::move(source)), target_(std::move(target)) {
  for (auto& [v, f] : components) {
    if (!source_.in_support(v) || !target_.in_support(v)) continue;
    if (!(f.source() == source_.component(v)) || !(f.target() == target_.component(v)))
      throw DimensionMismatch("chain map component in " + degree_label(v) +
                              " does not match the complexes");
    components_.emplace(v, std::move(f));
  }
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target,
                   std::map<int, ModuleMorphism> components)
    : ChainMap(std::move(source), std::move(target), std::move(components), Trusted{}) {
  int lo = std::min(source_.lo(), target_.lo());
  int hi = std::max(source_.hi(), target_.hi()) + 1;
  for (int v = lo; v <= hi; ++v) {
    ModuleMorphism lhs = target_.differential(v) * component(v);
    ModuleMorphism rhs = component(v - 1) * source_.differential(v);
    if (!lhs.equals(rhs))
      throw NotAChainMap(v, "d * f != f * d in " + degree_label(v) + ": " +
                                lhs.action().to_string() + " vs " + rhs.action().to_string());
  }
}

ChainMap make_chain_map_unchecked(ChainComplex source, ChainComplex target,
                                  std::map<int, ModuleMorphism> components) {
  return ChainMap(std::move(source), std::move(target), std::move(components),
                  ChainMap::Trusted{});
}

ChainMap ChainMap::identity(const ChainComplex& c) {
  std::map<int, ModuleMorphism> comps;
  for (int v = c.lo(); v <= c.hi(); ++v) comps.emplace(v, ModuleMorphism::identity(c.component(v)));
  return make_chain_map_unchecked(c, c, std::move(comps));
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) {
  return make_chain_map_unchecked(source, target, {});
}

ChainMap ChainMap::from_actions(const ChainComplex& source, const ChainComplex& target,
                                const std::map<int, Matrix>& actions) {
  std::map<int, ModuleMorphism> comps;
  for (const auto& [v, a] : actions)
    comps.emplace(v, ModuleMorphism(source.component(v), target.component(v), a));
  return ChainMap(source, target, std::move(comps));
}

ModuleMorphism ChainMap::component(int v) const {
  return lookup(components_, v, source_.component(v), target_.component(v));
}

bool ChainMap::equals(const ChainMap& other) const {
  int lo = std::min(source_.lo(), other.source_.lo());
  int hi = std::max(source_.hi(), other.source_.hi());
  for (int v = lo; v <= hi; ++v)
    if (!component(v).equals(other.component(v))) return false;
  return true;
}

bool ChainMap::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const auto& kv) { return kv.second.is_zero(); });
}

bool ChainMap::is_degreewise_surjective() const {
  for (int v = target_.lo(); v <= target_.hi(); ++v)
    if (!component(v).is_surjective()) return false;
  return true;
}

bool ChainMap::is_degreewise_injective() const {
  for (int v = source_.lo(); v <= source_.hi(); ++v)
    if (!component(v).is_injective()) return false;
  return true;
}

bool ChainMap::is_degreewise_isomorphism() const {
  return is_degreewise_injective() && is_degreewise_surjective();
}

ChainMap ChainMap::operator-() const {
  std::map<int, ModuleMorphism> comps;
  for (const auto& [v, f] : components_) comps.emplace(v, -f);
  return make_chain_map_unchecked(source_, target_, std::move(comps));
}

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
  std::map<int, ModuleMorphism> comps;
  for (int v = a.source_.lo(); v <= a.source_.hi(); ++v)
    comps.emplace(v, a.component(v) + b.component(v));
  return make_chain_map_unchecked(a.source_, a.target_, std::move(comps));
}

ChainMap operator-(const ChainMap& a, const ChainMap& b) { return a + (-b); }

ChainMap operator*(const ChainMap& g, const ChainMap& f) {
  std::map<int, ModuleMorphism> comps;
  for (int v = f.source_.lo(); v <= f.source_.hi(); ++v) {
    if (f.target_.component(v).generators() != g.source_.component(v).generators())
      throw DimensionMismatch("composition of chain maps: mismatch in " + degree_label(v));
    comps.emplace(v, g.component(v) * f.component(v));
  }
  for (auto& [v, h] : comps) h = ModuleMorphism::unchecked(f.source_.component(v),
                                                            g.target_.component(v), h.action());
  return make_chain_map_unchecked(f.source_, g.target_, std::move(comps));
}

// ---------------------------------------------------------------------------
// Homotopy

ModuleMorphism Homotopy::component(int v) const {
  return lookup(components, v, source.component(v), target.component(v + 1));
}

ChainMap Homotopy::boundary() const {
  std::map<int, ModuleMorphism> comps;
  int lo = std::min(source.lo(), target.lo() - 1);
  int hi = std::max(source.hi(), target.hi());
  for (int v = lo; v <= hi; ++v) {
    if (!source.in_support(v) || !target.in_support(v)) continue;
    ModuleMorphism a = target.differential(v + 1) * component(v);
    ModuleMorphism b = component(v - 1) * source.differential(v);
    comps.emplace(v, ModuleMorphism::unchecked(source.component(v), target.component(v),
                                               a.action() + b.action()));
  }
  return ChainMap(source, target, std::move(comps));
}

// ---------------------------------------------------------------------------
// shift, disc, direct sums, cones

ChainComplex shift(const ChainComplex& m) {
  std::vector<PresentedModule> mods;
  std::vector<ModuleMorphism> diffs;
  for (int v = m.lo(); v <= m.hi(); ++v) {
    mods.push_back(m.component(v));
    if (v > m.lo()) diffs.push_back(-m.differential(v));
  }
  return ChainComplex(m.ring(), m.lo() + 1, mods, diffs);
}

ChainMap shift(const ChainMap& f) {
  std::map<int, ModuleMorphism> comps;
  for (int v = f.source().lo(); v <= f.source().hi(); ++v) comps.emplace(v + 1, f.component(v));
  return make_chain_map_unchecked(shift(f.source()), shift(f.target()), std::move(comps));
}

ChainComplex disc(int v, const PresentedModule& f) {
  return ChainComplex(f.ring(), v - 1, {f, f}, {ModuleMorphism::identity(f)});
}

ComplexSum direct_sum(const std::vector<ChainComplex>& summands) {
  if (summands.empty()) throw DimensionMismatch("direct sum of no complexes");
  const Ring& R = summands.front().ring();
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& c : summands) {
    if (c.lo() > c.hi()) continue;
    lo = any ? std::min(lo, c.lo()) : c.lo();
    hi = any ? std::max(hi, c.hi()) : c.hi();
    any = true;
  }
  std::vector<DirectSum> sums;
  std::vector<PresentedModule> mods;
  for (int v = lo; v <= hi; ++v) {
    std::vector<PresentedModule> parts;
    for (const auto& c : summands) parts.push_back(c.component(v));
    sums.push_back(perfacto::direct_sum(parts));
    mods.push_back(sums.back().module);
  }
  std::vector<ModuleMorphism> diffs;
  for (int v = lo + 1; v <= hi; ++v) {
    Matrix d(R, mods[v - lo - 1].generators(), mods[v - lo].generators());
    for (std::size_t k = 0; k < summands.size(); ++k)
      d.paste(sums[v - lo - 1].offsets[k], sums[v - lo].offsets[k],
              summands[k].differential(v).action());
    diffs.push_back(ModuleMorphism::unchecked(mods[v - lo], mods[v - lo - 1], d));
  }
  ChainComplex total(R, lo, mods, diffs);
  ComplexSum out{total, {}, {}};
  for (std::size_t k = 0; k < summands.size(); ++k) {
    std::map<int, ModuleMorphism> inc, proj;
    for (int v = lo; v <= hi; ++v) {
      if (!summands[k].in_support(v)) continue;
      inc.emplace(v, sums[v - lo].inclusions[k]);
      proj.emplace(v, sums[v - lo].projections[k]);
    }
    out.inclusions.push_back(make_chain_map_unchecked(summands[k], total, std::move(inc)));
    out.projections.push_back(make_chain_map_unchecked(total, summands[k], std::move(proj)));
  }
  return out;
}

ConeData cone(const ChainMap& alpha) {
  const ChainComplex& M = alpha.source();
  const ChainComplex& N = alpha.target();
  const Ring& R = M.ring();
  bool m_empty = M.lo() > M.hi(), n_empty = N.lo() > N.hi();
  if (m_empty && n_empty) {
    ChainComplex z = ChainComplex::zero(R);
    return {z, ChainMap::zero(N, z), ChainMap::zero(z, shift(M)), {}, {}};
  }
  int lo = m_empty ? N.lo() : n_empty ? M.lo() + 1 : std::min(N.lo(), M.lo() + 1);
  int hi = m_empty ? N.hi() : n_empty ? M.hi() + 1 : std::max(N.hi(), M.hi() + 1);

  std::vector<DirectSum> sums;
  std::vector<PresentedModule> mods;
  for (int v = lo; v <= hi; ++v) {
    sums.push_back(perfacto::direct_sum({N.component(v), M.component(v - 1)}));
    mods.push_back(sums.back().module);
  }
  std::vector<ModuleMorphism> diffs;
  for (int v = lo + 1; v <= hi; ++v) {
    const DirectSum& src = sums[v - lo];
    const DirectSum& tgt = sums[v - lo - 1];
    Matrix d(R, tgt.module.generators(), src.module.generators());
    d.paste(0, 0, N.differential(v).action());
    d.paste(0, src.offsets[1], alpha.component(v - 1).action());
    d.paste(tgt.offsets[1], src.offsets[1], -M.differential(v - 1).action());
    diffs.push_back(ModuleMorphism::unchecked(src.module, tgt.module, d));
  }
  ChainComplex c(R, lo, mods, diffs);
  ChainComplex sm = shift(M);

  std::map<int, ModuleMorphism> inc, proj, sec, ret;
  for (int v = lo; v <= hi; ++v) {
    const DirectSum& s = sums[v - lo];
    if (N.in_support(v)) {
      inc.emplace(v, s.inclusions[0]);
    }
    ret.emplace(v, ModuleMorphism::unchecked(s.module, N.component(v), s.projections[0].action()));
    if (sm.in_support(v)) {
      proj.emplace(v, ModuleMorphism::unchecked(s.module, sm.component(v), s.projections[1].action()));
      sec.emplace(v, ModuleMorphism::unchecked(sm.component(v), s.module, s.inclusions[1].action()));
    }
  }
  return {c, ChainMap(N, c, std::move(inc)), ChainMap(c, sm, std::move(proj)), std::move(sec),
          std::move(ret)};
}

// ---------------------------------------------------------------------------
// Z, B, H, C

std::optional<ModuleMorphism> lift_through(const ModuleMorphism& f, const ModuleMorphism& mono) {
  const PresentedModule& mid = mono.source();
  const Ring& R = mid.ring();
  auto sol = solve_columns(hstack(mono.action(), mono.target().relations()), f.action());
  if (!sol) return std::nullopt;
  Matrix x = sol->block(0, 0, mid.generators(), f.source().generators());
  (void)R;
  try {
    ModuleMorphism g(f.source(), mid, x);
    return g;
  } catch (const IncompatibleWithRelations&) {
    return std::nullopt;
  }
}

GradedPieces zbhc(const ChainComplex& m) {
  const Ring& R = m.ring();
  std::vector<PresentedModule> z, b, h, c;
  GradedPieces out{ChainComplex::zero(R), ChainComplex::zero(R), ChainComplex::zero(R),
                   ChainComplex::zero(R), {}, {}, {}, {}};
  for (int v = m.lo(); v <= m.hi(); ++v) {
    MorphismData ker = kernel(m.differential(v));
    ModuleMorphism d_up = m.differential(v + 1);
    KernelCokernelImage up = kernel_cokernel_image(d_up);

    Simplified bs = simplify(up.image.module);
    ModuleMorphism b_in = up.image.map * bs.from;

    Simplified cs = simplify(up.cokernel.module);
    ModuleMorphism to_c = cs.to * up.cokernel.map;

    auto boundary_in_cycles = lift_through(d_up, ker.map);
    if (!boundary_in_cycles) throw Error("internal: boundaries are not cycles in " + degree_label(v));
    MorphismData hq = cokernel(*boundary_in_cycles);
    Simplified hs = simplify(hq.module);
    ModuleMorphism z_to_h = hs.to * hq.map;

    z.push_back(ker.module);
    b.push_back(bs.module);
    h.push_back(hs.module);
    c.push_back(cs.module);
    out.cycles_in.emplace(v, ker.map);
    out.boundaries_in.emplace(v, b_in);
    out.cycles_to_homology.emplace(v, z_to_h);
    out.to_cokernel.emplace(v, to_c);
  }
  out.Z = zero_differential_complex(R, m.lo(), z);
  out.B = zero_differential_complex(R, m.lo(), b);
  out.H = zero_differential_complex(R, m.lo(), h);
  out.C = zero_differential_complex(R, m.lo(), c);
  return out;
}

const ChainComplex& piece(const GradedPieces& p, GradedFunctor f) {
  switch (f) {
    case GradedFunctor::Z: return p.Z;
    case GradedFunctor::B: return p.B;
    case GradedFunctor::H: return p.H;
    case GradedFunctor::C: return p.C;
  }
  return p.Z;
}

ChainMap zbhc_map(const ChainMap& alpha, GradedFunctor f, const GradedPieces& src,
                  const GradedPieces& tgt) {
  const ChainComplex& M = alpha.source();
  const ChainComplex& N = alpha.target();
  const ChainComplex& S = piece(src, f);
  const ChainComplex& T = piece(tgt, f);
  std::map<int, ModuleMorphism> comps;
  for (int v = std::max(M.lo(), N.lo()); v <= std::min(M.hi(), N.hi()); ++v) {
    const ModuleMorphism a = alpha.component(v);
    std::optional<ModuleMorphism> g;
    switch (f) {
      case GradedFunctor::Z:
        g = lift_through(a * src.cycles_in.at(v), tgt.cycles_in.at(v));
        break;
      case GradedFunctor::B:
        g = lift_through(a * src.boundaries_in.at(v), tgt.boundaries_in.at(v));
        break;
      case GradedFunctor::C:
        g = descend(tgt.to_cokernel.at(v) * a, src.to_cokernel.at(v));
        break;
      case GradedFunctor::H: {
        auto zmap = lift_through(a * src.cycles_in.at(v), tgt.cycles_in.at(v));
        if (zmap) g = descend(tgt.cycles_to_homology.at(v) * *zmap, src.cycles_to_homology.at(v));
        break;
      }
    }
    if (!g) throw Error("internal: induced map does not exist in " + degree_label(v));
    comps.emplace(v, ModuleMorphism::unchecked(S.component(v), T.component(v), g->action()));
  }
  return make_chain_map_unchecked(S, T, std::move(comps));
}

ChainMap zbhc_map(const ChainMap& alpha, GradedFunctor f) {
  return zbhc_map(alpha, f, zbhc(alpha.source()), zbhc(alpha.target()));
}

std::map<int, std::string> homology_report(const ChainComplex& m) {
  std::map<int, std::string> out;
  GradedPieces p = zbhc(m);
  for (int v = m.lo(); v <= m.hi(); ++v) out[v] = p.H.component(v).describe();
  return out;
}

bool is_acyclic(const ChainComplex& m) {
  GradedPieces p = zbhc(m);
  for (int v = m.lo(); v <= m.hi(); ++v)
    if (!p.H.component(v).is_zero()) return false;
  return true;
}

bool is_quasi_iso_by_homology(const ChainMap& alpha) {
  GradedPieces src = zbhc(alpha.source()), tgt = zbhc(alpha.target());
  ChainMap h = zbhc_map(alpha, GradedFunctor::H, src, tgt);
  int lo = std::min(alpha.source().lo(), alpha.target().lo());
  int hi = std::max(alpha.source().hi(), alpha.target().hi());
  for (int v = lo; v <= hi; ++v)
    if (!h.component(v).is_isomorphism()) return false;
  return true;
}

bool is_quasi_iso_by_cone(const ChainMap& alpha) { return is_acyclic(cone(alpha).complex); }

bool is_quasi_iso(const ChainMap& alpha) {
  bool by_h = is_quasi_iso_by_homology(alpha);
  bool by_cone = is_quasi_iso_by_cone(alpha);
  if (by_h != by_cone)
    throw Error("inconsistent quasi-isomorphism decision: homology says " +
                std::string(by_h ? "yes" : "no") + ", cone says " + (by_cone ? "yes" : "no"));
  return by_h;
}

// ---------------------------------------------------------------------------
// kernel, cokernel and image complexes

ChainMap kernel_complex(const ChainMap& alpha) {
  const ChainComplex& S = alpha.source();
  const Ring& R = S.ring();
  std::vector<PresentedModule> mods;
  std::vector<ModuleMorphism> incl;
  for (int v = S.lo(); v <= S.hi(); ++v) {
    MorphismData k = kernel(alpha.component(v));
    mods.push_back(k.module);
    incl.push_back(k.map);
  }
  std::vector<ModuleMorphism> diffs;
  for (int v = S.lo() + 1; v <= S.hi(); ++v) {
    auto d = lift_through(S.differential(v) * incl[v - S.lo()], incl[v - S.lo() - 1]);
    if (!d) throw Error("internal: differential does not preserve the kernel in " + degree_label(v));
    diffs.push_back(*d);
  }
  ChainComplex k(R, S.lo(), mods, diffs);
  std::map<int, ModuleMorphism> comps;
  for (int v = S.lo(); v <= S.hi(); ++v) comps.emplace(v, incl[v - S.lo()]);
  return make_chain_map_unchecked(k, S, std::move(comps));
}

ChainMap cokernel_complex(const ChainMap& alpha) {
  const ChainComplex& T = alpha.target();
  const Ring& R = T.ring();
  std::vector<PresentedModule> mods;
  for (int v = T.lo(); v <= T.hi(); ++v) mods.push_back(cokernel(alpha.component(v)).module);
  std::vector<ModuleMorphism> diffs;
  for (int v = T.lo() + 1; v <= T.hi(); ++v)
    diffs.push_back(ModuleMorphism(mods[v - T.lo()], mods[v - T.lo() - 1],
                                   T.differential(v).action()));
  ChainComplex q(R, T.lo(), mods, diffs);
  std::map<int, ModuleMorphism> comps;
  for (int v = T.lo(); v <= T.hi(); ++v)
    comps.emplace(v, ModuleMorphism::unchecked(T.component(v), q.component(v),
                                               Matrix::identity(R, T.component(v).generators())));
  return make_chain_map_unchecked(T, q, std::move(comps));
}

ChainMap image_complex(const ChainMap& alpha) {
  const ChainComplex& S = alpha.source();
  const Ring& R = S.ring();
  std::vector<PresentedModule> mods;
  for (int v = S.lo(); v <= S.hi(); ++v)
    mods.push_back(kernel_cokernel_image(alpha.component(v)).image.module);
  std::vector<ModuleMorphism> diffs;
  for (int v = S.lo() + 1; v <= S.hi(); ++v)
    diffs.push_back(ModuleMorphism(mods[v - S.lo()], mods[v - S.lo() - 1],
                                   S.differential(v).action()));
  ChainComplex im(R, S.lo(), mods, diffs);
  std::map<int, ModuleMorphism> comps;
  for (int v = S.lo(); v <= S.hi(); ++v)
    if (alpha.target().in_support(v))
      comps.emplace(v, ModuleMorphism::unchecked(im.component(v), alpha.target().component(v),
                                                 alpha.component(v).action()));
  return make_chain_map_unchecked(im, alpha.target(), std::move(comps));
}

SimplifiedComplex simplify(const ChainComplex& m) {
  const Ring& R = m.ring();
  std::vector<Simplified> parts;
  std::vector<PresentedModule> mods;
  for (int v = m.lo(); v <= m.hi(); ++v) {
    parts.push_back(simplify(m.component(v)));
    mods.push_back(parts.back().module);
  }
  std::vector<ModuleMorphism> diffs;
  for (int v = m.lo() + 1; v <= m.hi(); ++v) {
    const auto& above = parts[v - m.lo()];
    const auto& below = parts[v - m.lo() - 1];
    diffs.push_back(ModuleMorphism::unchecked(
        above.module, below.module, below.to.action() * m.differential(v).action() * above.from.action()));
  }
  ChainComplex s(R, m.lo(), mods, diffs);
  std::map<int, ModuleMorphism> to, from;
  for (int v = m.lo(); v <= m.hi(); ++v) {
    to.emplace(v, parts[v - m.lo()].to);
    from.emplace(v, parts[v - m.lo()].from);
  }
  return {s, make_chain_map_unchecked(m, s, std::move(to)),
          make_chain_map_unchecked(s, m, std::move(from))};
}

bool identical(const ChainComplex& a, const ChainComplex& b) {
  if (a.ring() != b.ring()) return false;
  int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  for (int v = lo; v <= hi; ++v) {
    if (!(a.component(v) == b.component(v))) return false;
    if (a.differential(v).action() != b.differential(v).action()) return false;
  }
  return true;
}

}  // namespace perfacto

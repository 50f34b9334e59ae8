#include "perfacto/bifunctor.hpp"

#include "perfacto/errors.hpp"

namespace perfacto {

namespace {

int sign_of(long e) { return (e % 2 == 0) ? 1 : -1; }

Matrix signed_matrix(const Matrix& m, int sign) { return sign > 0 ? m : -m; }

PresentedModule sum_or_zero(const Ring& R, const std::vector<PresentedModule>& parts) {
  if (parts.empty()) return PresentedModule::zero(R);
  return direct_sum(parts).module;
}

struct TensorGenerator {
  const TotalTensor::Summand* summand;
  std::size_t left;   ///< generator index in M_i
  std::size_t right;  ///< generator index in N_{v-i}
};

TensorGenerator decode(const TotalTensor& t, int v, std::size_t global) {
  for (const auto& s : t.summands.at(v)) {
    std::size_t size = s.tensor.module.generators();
    if (global < s.offset + size) {
      std::size_t local = global - s.offset;
      std::size_t width = s.tensor.right.generators();
      return {&s, local / width, local % width};
    }
  }
  throw Error("internal: tensor generator index out of range");
}

}  // namespace

ChainComplex unit_complex(const Ring& ring) {
  return ChainComplex::concentrated(PresentedModule::free(ring, 1), 0);
}

ChainMap chain_map_from_generators(const ChainComplex& source, const ChainComplex& target,
                                   const std::function<Matrix(int, std::size_t)>& image) {
  const Ring& R = source.ring();
  std::map<int, ModuleMorphism> comps;
  for (int v = std::max(source.lo(), target.lo()); v <= std::min(source.hi(), target.hi()); ++v) {
    const auto& s = source.component(v);
    const auto& t = target.component(v);
    Matrix a(R, t.generators(), s.generators());
    for (std::size_t j = 0; j < s.generators(); ++j) a.paste(0, j, image(v, j));
    comps.emplace(v, ModuleMorphism(s, t, a));
  }
  return ChainMap(source, target, std::move(comps));
}

// ---------------------------------------------------------------------------
// total Hom

std::map<int, ModuleMorphism> TotalHom::maps(int v, const Matrix& coords) const {
  std::map<int, ModuleMorphism> out;
  auto it = summands.find(v);
  if (it == summands.end()) return out;
  for (const auto& s : it->second) {
    Matrix sub = coords.block(s.offset, 0, s.hom.module.generators(), 1);
    out.emplace(s.i, s.hom.to_morphism(sub));
  }
  return out;
}

Matrix TotalHom::coordinates(int v, const std::map<int, Matrix>& actions) const {
  const Ring& R = source.ring();
  Matrix out(R, complex.component(v).generators(), 1);
  auto it = summands.find(v);
  if (it == summands.end()) return out;
  for (const auto& s : it->second) {
    auto a = actions.find(s.i);
    if (a == actions.end()) continue;
    out.paste(s.offset, 0, s.hom.coordinates(a->second));
  }
  return out;
}

ChainMap TotalHom::to_chain_map(const Matrix& coords) const {
  return ChainMap(source, target, maps(0, coords));
}

Matrix TotalHom::from_chain_map(const ChainMap& f) const {
  std::map<int, Matrix> actions;
  for (int i = source.lo(); i <= source.hi(); ++i) actions.emplace(i, f.component(i).action());
  return coordinates(0, actions);
}

TotalHom total_hom(const ChainComplex& m, const ChainComplex& n) {
  const Ring& R = m.ring();
  if (m.ring() != n.ring()) throw DimensionMismatch("total_hom: different rings");
  TotalHom out{m, n, ChainComplex::zero(R), {}};
  if (m.lo() > m.hi() || n.lo() > n.hi()) return out;
  int lo = n.lo() - m.hi(), hi = n.hi() - m.lo();
  std::vector<PresentedModule> mods;
  for (int v = lo; v <= hi; ++v) {
    std::vector<TotalHom::Summand> parts;
    std::vector<PresentedModule> pieces;
    std::size_t offset = 0;
    for (int i = m.lo(); i <= m.hi(); ++i) {
      if (!n.in_support(i + v)) continue;
      HomModule h = hom_module(m.component(i), n.component(i + v));
      std::size_t g = h.module.generators();
      pieces.push_back(h.module);
      parts.push_back({i, std::move(h), offset});
      offset += g;
    }
    mods.push_back(sum_or_zero(R, pieces));
    out.summands.emplace(v, std::move(parts));
  }
  // assemble with zero differentials first so coordinates() can be used
  std::vector<ModuleMorphism> zero_diffs;
  for (int v = lo + 1; v <= hi; ++v)
    zero_diffs.push_back(ModuleMorphism::zero(mods[v - lo], mods[v - lo - 1]));
  out.complex = ChainComplex(R, lo, mods, zero_diffs);

  std::vector<ModuleMorphism> diffs;
  for (int v = lo + 1; v <= hi; ++v) {
    const auto& src = mods[v - lo];
    const auto& tgt = mods[v - lo - 1];
    Matrix d(R, tgt.generators(), src.generators());
    for (std::size_t k = 0; k < src.generators(); ++k) {
      auto f = out.maps(v, Matrix::unit_column(R, src.generators(), k));
      std::map<int, Matrix> actions;
      for (int i = m.lo(); i <= m.hi(); ++i) {
        if (!n.in_support(i + v - 1)) continue;
        Matrix a(R, n.component(i + v - 1).generators(), m.component(i).generators());
        if (f.count(i)) a = a + n.differential(i + v).action() * f.at(i).action();
        if (f.count(i - 1))
          a = a - signed_matrix(f.at(i - 1).action() * m.differential(i).action(), sign_of(v));
        actions.emplace(i, a);
      }
      d.paste(0, k, out.coordinates(v - 1, actions));
    }
    diffs.push_back(ModuleMorphism(src, tgt, d));
  }
  out.complex = ChainComplex(R, lo, mods, diffs);
  return out;
}

// ---------------------------------------------------------------------------
// total tensor

const TotalTensor::Summand* TotalTensor::find(int v, int i) const {
  auto it = summands.find(v);
  if (it == summands.end()) return nullptr;
  for (const auto& s : it->second)
    if (s.i == i) return &s;
  return nullptr;
}

TotalTensor total_tensor(const ChainComplex& m, const ChainComplex& n) {
  const Ring& R = m.ring();
  if (m.ring() != n.ring()) throw DimensionMismatch("total_tensor: different rings");
  TotalTensor out{m, n, ChainComplex::zero(R), {}};
  if (m.lo() > m.hi() || n.lo() > n.hi()) return out;
  int lo = m.lo() + n.lo(), hi = m.hi() + n.hi();
  std::vector<PresentedModule> mods;
  for (int v = lo; v <= hi; ++v) {
    std::vector<TotalTensor::Summand> parts;
    std::vector<PresentedModule> pieces;
    std::size_t offset = 0;
    for (int i = m.lo(); i <= m.hi(); ++i) {
      if (!n.in_support(v - i)) continue;
      TensorModule t = tensor_module(m.component(i), n.component(v - i));
      std::size_t g = t.module.generators();
      pieces.push_back(t.module);
      parts.push_back({i, std::move(t), offset});
      offset += g;
    }
    mods.push_back(sum_or_zero(R, pieces));
    out.summands.emplace(v, std::move(parts));
  }
  std::vector<ModuleMorphism> diffs;
  for (int v = lo + 1; v <= hi; ++v) {
    const auto& src = mods[v - lo];
    const auto& tgt = mods[v - lo - 1];
    Matrix d(R, tgt.generators(), src.generators());
    for (const auto& s : out.summands.at(v)) {
      int i = s.i, j = v - i;
      if (const auto* t = out.find(v - 1, i - 1))
        d.paste(t->offset, s.offset,
                kron(m.differential(i).action(),
                     Matrix::identity(R, n.component(j).generators())));
      if (const auto* t = out.find(v - 1, i))
        d.paste(t->offset, s.offset,
                signed_matrix(kron(Matrix::identity(R, m.component(i).generators()),
                                   n.differential(j).action()),
                              sign_of(i)));
    }
    diffs.push_back(ModuleMorphism::unchecked(src, tgt, d));
  }
  out.complex = ChainComplex(R, lo, mods, diffs);
  return out;
}

// ---------------------------------------------------------------------------
// functoriality

ChainMap hom_functor_map(const TotalHom& from, const TotalHom& to, const ChainMap& alpha,
                         const ChainMap& beta) {
  const Ring& R = from.source.ring();
  return chain_map_from_generators(
      from.complex, to.complex, [&](int v, std::size_t k) {
        auto f = from.maps(v, Matrix::unit_column(R, from.complex.component(v).generators(), k));
        std::map<int, Matrix> actions;
        for (const auto& s : to.summands.at(v)) {
          int i = s.i;
          auto it = f.find(i);
          if (it == f.end()) continue;
          actions.emplace(i, beta.component(i + v).action() * it->second.action() *
                                 alpha.component(i).action());
        }
        return to.coordinates(v, actions);
      });
}

ChainMap hom_left(const ChainMap& alpha, const ChainComplex& n) {
  return hom_functor_map(total_hom(alpha.target(), n), total_hom(alpha.source(), n), alpha,
                         ChainMap::identity(n));
}

ChainMap hom_right(const ChainComplex& m, const ChainMap& beta) {
  return hom_functor_map(total_hom(m, beta.source()), total_hom(m, beta.target()),
                         ChainMap::identity(m), beta);
}

ChainMap tensor_functor_map(const TotalTensor& from, const TotalTensor& to, const ChainMap& alpha,
                            const ChainMap& beta) {
  const Ring& R = from.left.ring();
  std::map<int, ModuleMorphism> comps;
  const ChainComplex& S = from.complex;
  const ChainComplex& T = to.complex;
  for (int v = std::max(S.lo(), T.lo()); v <= std::min(S.hi(), T.hi()); ++v) {
    Matrix a(R, T.component(v).generators(), S.component(v).generators());
    for (const auto& s : from.summands.at(v)) {
      const auto* t = to.find(v, s.i);
      if (!t) continue;
      a.paste(t->offset, s.offset,
              kron(alpha.component(s.i).action(), beta.component(v - s.i).action()));
    }
    comps.emplace(v, ModuleMorphism(S.component(v), T.component(v), a));
  }
  return ChainMap(S, T, std::move(comps));
}

ChainMap tensor_left(const ChainMap& alpha, const ChainComplex& n) {
  return tensor_functor_map(total_tensor(alpha.source(), n), total_tensor(alpha.target(), n),
                            alpha, ChainMap::identity(n));
}

ChainMap tensor_right(const ChainComplex& m, const ChainMap& beta) {
  return tensor_functor_map(total_tensor(m, beta.source()), total_tensor(m, beta.target()),
                            ChainMap::identity(m), beta);
}

// ---------------------------------------------------------------------------
// certificates

CanonicalMorphismCertificate certify(const ChainMap& morphism) {
  CanonicalMorphismCertificate out{morphism, false, std::nullopt};
  if (!morphism.is_degreewise_isomorphism()) return out;
  const ChainComplex& S = morphism.source();
  const ChainComplex& T = morphism.target();
  std::map<int, ModuleMorphism> comps;
  for (int v = std::max(S.lo(), T.lo()); v <= std::min(S.hi(), T.hi()); ++v) {
    auto inv = morphism.component(v).inverse();
    if (!inv) throw Error("internal: bijective component without inverse in degree " +
                          std::to_string(v));
    comps.emplace(v, *inv);
  }
  ChainMap inverse(T, S, std::move(comps));
  if (!(inverse * morphism).equals(ChainMap::identity(S)) ||
      !(morphism * inverse).equals(ChainMap::identity(T)))
    throw Error("internal: inverse fails the two-sided check");
  out.is_isomorphism = true;
  out.inverse = std::move(inverse);
  return out;
}

CanonicalMorphismCertificate cone_commute(const ChainComplex& m, const ChainMap& alpha,
                                          BifunctorKind which) {
  const Ring& R = m.ring();
  const ChainComplex& N = alpha.source();
  const ChainComplex& N2 = alpha.target();
  ConeData target_cone = cone(alpha);
  const ChainComplex& C = target_cone.complex;

  if (which == BifunctorKind::Hom) {
    TotalHom from = total_hom(m, N), to = total_hom(m, N2);
    ChainMap h = hom_functor_map(from, to, ChainMap::identity(m), alpha);
    ConeData lhs = cone(h);
    TotalHom rhs = total_hom(m, C);
    auto image = [&](int v, std::size_t k) {
      std::size_t top = to.complex.component(v).generators();
      std::map<int, ModuleMorphism> g, f;
      if (k < top)
        g = to.maps(v, Matrix::unit_column(R, top, k));
      else
        f = from.maps(v - 1, Matrix::unit_column(R, from.complex.component(v - 1).generators(),
                                                 k - top));
      std::map<int, Matrix> actions;
      for (const auto& s : rhs.summands.at(v)) {
        int i = s.i;
        std::size_t r1 = N2.component(i + v).generators();
        std::size_t r2 = N.component(i + v - 1).generators();
        Matrix a(R, r1 + r2, m.component(i).generators());
        if (g.count(i)) a.paste(0, 0, g.at(i).action());
        if (f.count(i)) a.paste(r1, 0, f.at(i).action());
        actions.emplace(i, a);
      }
      return rhs.coordinates(v, actions);
    };
    return certify(chain_map_from_generators(lhs.complex, rhs.complex, image));
  }

  TotalTensor from = total_tensor(m, N), to = total_tensor(m, N2);
  ChainMap t = tensor_functor_map(from, to, ChainMap::identity(m), alpha);
  ConeData lhs = cone(t);
  TotalTensor rhs = total_tensor(m, C);
  auto image = [&](int v, std::size_t k) {
    Matrix out(R, rhs.complex.component(v).generators(), 1);
    std::size_t top = to.complex.component(v).generators();
    if (k < top) {
      TensorGenerator g = decode(to, v, k);
      const auto* s = rhs.find(v, g.summand->i);
      if (s) {
        std::size_t width = C.component(v - g.summand->i).generators();
        out.set(s->offset + g.left * width + g.right, 0, R.one());
      }
    } else {
      TensorGenerator g = decode(from, v - 1, k - top);
      int i = g.summand->i;
      const auto* s = rhs.find(v, i);
      if (s) {
        int j = v - i;
        std::size_t width = C.component(j).generators();
        std::size_t shift_in = N2.component(j).generators();
        out.set(s->offset + g.left * width + shift_in + g.right, 0, R.reduce(Scalar(sign_of(i))));
      }
    }
    return out;
  };
  return certify(chain_map_from_generators(lhs.complex, rhs.complex, image));
}

// ---------------------------------------------------------------------------
// biduality, tensor evaluation, homomorphism evaluation, xi

ChainMap biduality_map(const ChainComplex& m) {
  const Ring& R = m.ring();
  ChainComplex unit = unit_complex(R);
  TotalHom dual = total_hom(m, unit);
  TotalHom bidual = total_hom(dual.complex, unit);
  return chain_map_from_generators(m, bidual.complex, [&](int v, std::size_t j) {
    std::size_t nd = dual.complex.component(-v).generators();
    Matrix row(R, 1, nd);
    for (std::size_t k = 0; k < nd; ++k) {
      auto psi = dual.maps(-v, Matrix::unit_column(R, nd, k));
      Scalar value = psi.at(v).action()(0, j);
      row.set(0, k, R.reduce(value * sign_of(v)));
    }
    return bidual.coordinates(v, {{-v, row}});
  });
}

CanonicalMorphismCertificate biduality(const ChainComplex& m) { return certify(biduality_map(m)); }

namespace {

// Shared body of theta and xi: psi (x) n -> (m -> (-1)^{|m||n|} psi(m) n),
// landing in Hom(M, target) where target has the generators of N.
ChainMap evaluation_into(const ChainComplex& m, const ChainComplex& n,
                         const ChainComplex& target) {
  const Ring& R = m.ring();
  TotalHom dual = total_hom(m, unit_complex(R));
  TotalTensor source = total_tensor(dual.complex, n);
  TotalHom hom = total_hom(m, target);
  return chain_map_from_generators(source.complex, hom.complex, [&](int v, std::size_t k) {
    TensorGenerator g = decode(source, v, k);
    int a = g.summand->i, b = v - a;
    std::size_t nd = dual.complex.component(a).generators();
    auto psi = dual.maps(a, Matrix::unit_column(R, nd, g.left)).at(-a).action();
    Matrix e = Matrix::unit_column(R, n.component(b).generators(), g.right);
    Matrix action = signed_matrix(e * psi, sign_of(static_cast<long>(a) * b));
    return hom.coordinates(v, {{-a, action}});
  });
}

}  // namespace

ChainMap tensor_evaluation_map(const ChainComplex& m, const ChainComplex& n) {
  return evaluation_into(m, n, total_tensor(unit_complex(m.ring()), n).complex);
}

CanonicalMorphismCertificate tensor_evaluation(const ChainComplex& m, const ChainComplex& n) {
  return certify(tensor_evaluation_map(m, n));
}

ChainMap xi(const ChainComplex& m, const ChainComplex& f) { return evaluation_into(m, f, f); }

ChainMap unit_tensor_iso(const ChainComplex& f) {
  ChainComplex rf = total_tensor(unit_complex(f.ring()), f).complex;
  std::map<int, Matrix> actions;
  for (int v = f.lo(); v <= f.hi(); ++v)
    actions.emplace(v, Matrix::identity(f.ring(), f.component(v).generators()));
  return ChainMap::from_actions(rf, f, actions);
}

ChainMap hom_evaluation_map(const ChainComplex& n, const ChainComplex& m) {
  const Ring& R = m.ring();
  ChainComplex unit = unit_complex(R);
  TotalHom hn = total_hom(unit, n);
  TotalTensor source = total_tensor(hn.complex, m);
  TotalHom dual = total_hom(m, unit);
  TotalHom hom = total_hom(dual.complex, n);
  return chain_map_from_generators(source.complex, hom.complex, [&](int v, std::size_t k) {
    TensorGenerator g = decode(source, v, k);
    int a = g.summand->i, b = v - a;
    std::size_t nh = hn.complex.component(a).generators();
    Matrix p = hn.maps(a, Matrix::unit_column(R, nh, g.left)).at(0).action();
    std::size_t nd = dual.complex.component(-b).generators();
    Matrix action(R, n.component(a).generators(), nd);
    for (std::size_t l = 0; l < nd; ++l) {
      Matrix phi = dual.maps(-b, Matrix::unit_column(R, nd, l)).at(b).action();
      Scalar value = R.reduce(phi(0, g.right) * sign_of(b));
      action.paste(0, l, p.scaled(value));
    }
    return hom.coordinates(v, {{-b, action}});
  });
}

CanonicalMorphismCertificate hom_evaluation(const ChainComplex& n, const ChainComplex& m) {
  return certify(hom_evaluation_map(n, m));
}

bool bid_inverse_check(const ChainComplex& p) {
  const Ring& R = p.ring();
  ChainComplex unit = unit_complex(R);
  TotalHom dual = total_hom(p, unit);
  ChainMap delta_p = biduality_map(p);
  ChainMap delta_dual = biduality_map(dual.complex);
  ChainMap back = hom_left(delta_p, unit);
  return (back * delta_dual).equals(ChainMap::identity(dual.complex));
}

}  // namespace perfacto

#include "perfacto/random.hpp"

#include "perfacto/system.hpp"

namespace perfacto {

namespace {

std::vector<mpz_class> unitary_divisors(const mpz_class& n) {
  std::vector<mpz_class> out;
  for (mpz_class d = 2; d < n; ++d) {
    if (n % d != 0) continue;
    mpz_class e = n / d, g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
    if (g == 1) out.push_back(d);
  }
  return out;
}

}  // namespace

int DeskGenerator::uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

bool DeskGenerator::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Scalar DeskGenerator::scalar() {
  if (ring_.is_finite()) {
    long q = ring_.modulus().get_si();
    return Scalar(std::uniform_int_distribution<long>(0, q - 1)(rng_));
  }
  return ring_.reduce(Scalar(uniform(-3, 3)));
}

PresentedModule DeskGenerator::module(std::size_t max_generators, Components kind) {
  std::size_t g = static_cast<std::size_t>(uniform(0, static_cast<int>(max_generators)));
  switch (kind) {
    case Components::Free:
      return PresentedModule::free(ring_, g);
    case Components::Projective: {
      std::vector<mpz_class> parts;
      if (ring_.kind() == RingKind::IntegersMod) parts = unitary_divisors(ring_.modulus());
      Matrix rel(ring_, g, 0);
      std::vector<std::size_t> torsion;
      std::vector<Scalar> orders;
      for (std::size_t i = 0; i < g; ++i) {
        if (!parts.empty() && coin(0.5)) {
          torsion.push_back(i);
          orders.push_back(Scalar(parts[uniform(0, static_cast<int>(parts.size()) - 1)]));
        }
      }
      Matrix r(ring_, g, torsion.size());
      for (std::size_t k = 0; k < torsion.size(); ++k) r.set(torsion[k], k, orders[k]);
      return PresentedModule(ring_, g, r);
    }
    case Components::Any: {
      std::size_t rels = static_cast<std::size_t>(uniform(0, 2));
      Matrix r(ring_, g, rels);
      for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < rels; ++j) r.set(i, j, scalar());
      return PresentedModule(ring_, g, r);
    }
  }
  return PresentedModule::zero(ring_);
}

Matrix DeskGenerator::combine(const std::vector<Matrix>& generators, std::size_t rows,
                              std::size_t cols) {
  Matrix out(ring_, rows, cols);
  for (const auto& g : generators) {
    Scalar c = ring_.is_finite() ? scalar() : ring_.reduce(Scalar(uniform(-2, 2)));
    if (!ring_.is_zero(c)) out = out + g.scaled(c);
  }
  return out;
}

ModuleMorphism DeskGenerator::morphism(const PresentedModule& m, const PresentedModule& n) {
  MorphismSystem sys(ring_);
  sys.add_unknown(m, n);
  std::vector<Matrix> gens;
  for (auto& sol : sys.homogeneous_generators()) gens.push_back(sol[0]);
  return ModuleMorphism(m, n, combine(gens, n.generators(), m.generators()));
}

ChainComplex DeskGenerator::complex(int lo, int hi, std::size_t max_generators, Components kind) {
  std::vector<PresentedModule> mods;
  std::vector<ModuleMorphism> diffs;
  for (int v = lo; v <= hi; ++v) {
    mods.push_back(module(max_generators, kind));
    if (v == lo) continue;
    const PresentedModule& src = mods.back();
    const PresentedModule& tgt = mods[mods.size() - 2];
    MorphismSystem sys(ring_);
    std::size_t x = sys.add_unknown(src, tgt);
    if (diffs.size() > 0) {
      const ModuleMorphism& below = diffs.back();
      sys.add_equation(below.target(),
                       {{x, below.action(), Matrix::identity(ring_, src.generators())}},
                       Matrix(ring_, below.target().generators(), src.generators()));
    }
    std::vector<Matrix> gens;
    for (auto& sol : sys.homogeneous_generators()) gens.push_back(sol[0]);
    diffs.push_back(ModuleMorphism(src, tgt, combine(gens, tgt.generators(), src.generators())));
  }
  return ChainComplex(ring_, lo, mods, diffs);
}

ChainMap DeskGenerator::chain_map(const ChainComplex& source, const ChainComplex& target) {
  int lo = std::max(source.lo(), target.lo());
  int hi = std::min(source.hi(), target.hi());
  if (lo > hi) return ChainMap::zero(source, target);
  MorphismSystem sys(ring_);
  std::map<int, std::size_t> unknown;
  for (int v = lo; v <= hi; ++v) unknown[v] = sys.add_unknown(source.component(v), target.component(v));
  // d^T f_v - f_{v-1} d^S == 0 for v in [lo, hi + 1]
  for (int v = lo; v <= hi + 1; ++v) {
    const PresentedModule& s = source.component(v);
    const PresentedModule& t = target.component(v - 1);
    if (s.generators() == 0 || t.generators() == 0) continue;
    std::vector<MorphismSystem::Term> terms;
    if (unknown.count(v))
      terms.push_back({unknown[v], target.differential(v).action(),
                       Matrix::identity(ring_, s.generators())});
    if (unknown.count(v - 1))
      terms.push_back({unknown[v - 1], -Matrix::identity(ring_, t.generators()),
                       source.differential(v).action()});
    if (!terms.empty()) sys.add_equation(t, terms, Matrix(ring_, t.generators(), s.generators()));
  }
  auto sols = sys.homogeneous_generators();
  std::map<int, ModuleMorphism> comps;
  std::vector<Scalar> coeffs;
  for (std::size_t k = 0; k < sols.size(); ++k)
    coeffs.push_back(ring_.is_finite() ? scalar() : ring_.reduce(Scalar(uniform(-2, 2))));
  for (int v = lo; v <= hi; ++v) {
    const auto& s = source.component(v);
    const auto& t = target.component(v);
    Matrix a(ring_, t.generators(), s.generators());
    for (std::size_t k = 0; k < sols.size(); ++k) a = a + sols[k][unknown[v]].scaled(coeffs[k]);
    comps.emplace(v, ModuleMorphism(s, t, a));
  }
  return ChainMap(source, target, std::move(comps));
}

}  // namespace perfacto

#include "perfacto/module.hpp"

#include <map>
#include <sstream>

#include "perfacto/errors.hpp"
#include "perfacto/system.hpp"

namespace perfacto {

namespace {

Matrix first_rows(const Matrix& m, std::size_t count) { return m.block(0, 0, count, m.cols()); }

// Columns of `m` with all-zero columns dropped.
Matrix drop_zero_columns(const Matrix& m) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < m.rows() && zero; ++i) zero = m.ring().is_zero(m(i, j));
    if (!zero) keep.push_back(j);
  }
  return m.select_cols(keep);
}

std::vector<std::pair<mpz_class, unsigned>> factorize(mpz_class n) {
  std::vector<std::pair<mpz_class, unsigned>> out;
  for (mpz_class p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

unsigned valuation(mpz_class d, const mpz_class& p) {
  unsigned e = 0;
  while (d != 0 && d % p == 0) {
    d /= p;
    ++e;
  }
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// PresentedModule

PresentedModule::PresentedModule(Ring ring, std::size_t generators, Matrix relations)
    : ring_(std::move(ring)), generators_(generators), relations_(std::move(relations)) {
  if (relations_.rows() != generators_)
    throw DimensionMismatch("relation matrix has " + std::to_string(relations_.rows()) +
                            " rows for " + std::to_string(generators_) + " generators");
  if (relations_.ring() != ring_) throw DimensionMismatch("relations over a different ring");
}

PresentedModule PresentedModule::free(const Ring& ring, std::size_t rank) {
  return PresentedModule(ring, rank, Matrix(ring, rank, 0));
}

PresentedModule PresentedModule::cyclic(const Ring& ring, const Scalar& a) {
  Matrix rel(ring, 1, 1);
  rel.set(0, 0, a);
  return PresentedModule(ring, 1, rel);
}

PresentedModule make_module(const Ring& ring, std::size_t generators, const Matrix& relations) {
  return PresentedModule(ring, generators, relations);
}

bool PresentedModule::is_zero() const { return invariant_factors().empty(); }

bool PresentedModule::same_element(const Matrix& x, const Matrix& y) const {
  return is_trivial_element(x - y);
}

bool PresentedModule::is_trivial_element(const Matrix& x) const {
  if (x.is_zero()) return true;
  if (relations_.cols() == 0) return false;
  return in_column_span(relations_, x);
}

Matrix PresentedModule::normal_form(const Matrix& x) const {
  SmithDecomposition d = snf(relations_);
  Matrix c = d.U * x;
  std::size_t k = std::min(relations_.rows(), relations_.cols());
  for (std::size_t i = 0; i < k; ++i) {
    const Scalar& di = d.S(i, i);
    if (ring_.is_zero(di)) continue;
    for (std::size_t j = 0; j < c.cols(); ++j) {
      Scalar v = c(i, j);
      if (ring_.is_field()) {
        v = 0;
      } else if (ring_.kind() == RingKind::Integers) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), v.get_num_mpz_t(), di.get_num_mpz_t());
        v = r;
      } else {
        mpz_class g = ring_.normalize(di).first.get_num();
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), v.get_num_mpz_t(), g.get_mpz_t());
        v = r;
      }
      c.set(i, j, v);
    }
  }
  return c;
}

std::vector<Scalar> PresentedModule::invariant_factors() const {
  std::vector<Scalar> out;
  SmithDecomposition d = snf(relations_);
  std::size_t k = std::min(relations_.rows(), relations_.cols());
  for (std::size_t i = 0; i < generators_; ++i) {
    Scalar di = i < k ? d.S(i, i) : ring_.zero();
    if (ring_.is_unit(di)) continue;
    out.push_back(ring_.normalize(di).first);
  }
  return out;
}

mpz_class PresentedModule::cardinality() const {
  mpz_class total = 1;
  for (const auto& d : invariant_factors()) {
    mpz_class o = ring_.cyclic_order(d);
    if (o == 0) return 0;
    total *= o;
  }
  return total;
}

std::string PresentedModule::describe() const {
  auto factors = invariant_factors();
  if (factors.empty()) return "0";
  // group equal summands, free summands first
  std::map<mpz_class, std::size_t> torsion;
  std::size_t free_rank = 0;
  for (const auto& d : factors) {
    if (ring_.is_zero(d))
      ++free_rank;
    else
      ++torsion[d.get_num()];
  }
  auto base_name = [&](const std::string& n) {
    return n.find('/') != std::string::npos ? "(" + n + ")" : n;
  };
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const std::string& name, std::size_t count, bool wrap) {
    out << (first ? "" : " + ") << (count > 1 && wrap ? base_name(name) : name);
    if (count > 1) out << "^" << count;
    first = false;
  };
  if (free_rank) emit(ring_.name(), free_rank, true);
  for (const auto& [d, count] : torsion) emit("Z/" + d.get_str(), count, true);
  return out.str();
}

// ---------------------------------------------------------------------------
// ModuleMorphism

ModuleMorphism::ModuleMorphism(PresentedModule source, PresentedModule target, Matrix action,
                               Trusted)
    : source_(std::move(source)), target_(std::move(target)), action_(std::move(action)) {
  if (action_.rows() != target_.generators() || action_.cols() != source_.generators())
    throw DimensionMismatch("action is " + std::to_string(action_.rows()) + "x" +
                            std::to_string(action_.cols()) + ", expected " +
                            std::to_string(target_.generators()) + "x" +
                            std::to_string(source_.generators()));
  if (source_.ring() != target_.ring() || action_.ring() != source_.ring())
    throw DimensionMismatch("morphism between modules over different rings");
}

ModuleMorphism::ModuleMorphism(PresentedModule source, PresentedModule target, Matrix action)
    : ModuleMorphism(std::move(source), std::move(target), std::move(action), Trusted{}) {
  const Matrix& rel = source_.relations();
  if (rel.cols() == 0) return;
  Matrix image = action_ * rel;
  if (image.is_zero()) return;
  if (target_.relations().cols() == 0 || !in_column_span(target_.relations(), image))
    throw IncompatibleWithRelations("action " + action_.to_string() +
                                    " does not send source relations into target relations");
}

ModuleMorphism ModuleMorphism::unchecked(PresentedModule source, PresentedModule target,
                                         Matrix action) {
  return ModuleMorphism(std::move(source), std::move(target), std::move(action), Trusted{});
}

ModuleMorphism ModuleMorphism::identity(const PresentedModule& m) {
  return unchecked(m, m, Matrix::identity(m.ring(), m.generators()));
}

ModuleMorphism ModuleMorphism::zero(const PresentedModule& source, const PresentedModule& target) {
  return unchecked(source, target, Matrix(source.ring(), target.generators(), source.generators()));
}

ModuleMorphism make_morphism(const PresentedModule& source, const PresentedModule& target,
                             const Matrix& action) {
  return ModuleMorphism(source, target, action);
}

bool ModuleMorphism::equals(const ModuleMorphism& other) const {
  if (action_.rows() != other.action_.rows() || action_.cols() != other.action_.cols())
    return false;
  Matrix diff = action_ - other.action_;
  if (diff.is_zero()) return true;
  if (target_.relations().cols() == 0) return false;
  return in_column_span(target_.relations(), diff);
}

bool ModuleMorphism::is_zero() const { return equals(zero(source_, target_)); }

bool ModuleMorphism::is_injective() const { return kernel(*this).module.is_zero(); }

bool ModuleMorphism::is_surjective() const { return cokernel(*this).module.is_zero(); }

std::optional<ModuleMorphism> ModuleMorphism::inverse() const {
  if (!is_isomorphism()) return std::nullopt;
  const Ring& R = target_.ring();
  Matrix system = hstack(action_, target_.relations());
  auto pre = solve_columns(system, Matrix::identity(R, target_.generators()));
  if (!pre) return std::nullopt;
  ModuleMorphism inv(target_, source_, first_rows(*pre, source_.generators()));
  return inv;
}

ModuleMorphism ModuleMorphism::operator-() const {
  return unchecked(source_, target_, -action_);
}

ModuleMorphism operator+(const ModuleMorphism& a, const ModuleMorphism& b) {
  return ModuleMorphism::unchecked(a.source_, a.target_, a.action_ + b.action_);
}

ModuleMorphism operator-(const ModuleMorphism& a, const ModuleMorphism& b) {
  return ModuleMorphism::unchecked(a.source_, a.target_, a.action_ - b.action_);
}

ModuleMorphism operator*(const ModuleMorphism& g, const ModuleMorphism& f) {
  if (f.target_.generators() != g.source_.generators())
    throw DimensionMismatch("composition: incompatible modules");
  return ModuleMorphism::unchecked(f.source_, g.target_, g.action_ * f.action_);
}

// ---------------------------------------------------------------------------
// kernels, cokernels, images

PresentedModule submodule_presentation(const PresentedModule& ambient, const Matrix& generators) {
  const Ring& R = ambient.ring();
  std::size_t k = generators.cols();
  if (k == 0) return PresentedModule::zero(R);
  Matrix syz = kernel_basis(hstack(generators, ambient.relations()));
  return PresentedModule(R, k, drop_zero_columns(first_rows(syz, k)));
}

MorphismData kernel(const ModuleMorphism& f) {
  const PresentedModule& src = f.source();
  const Ring& R = src.ring();
  Matrix sols = kernel_basis(hstack(f.action(), f.target().relations()));
  Matrix gens = drop_zero_columns(first_rows(sols, src.generators()));
  PresentedModule raw = submodule_presentation(src, gens);
  Simplified s = simplify(raw);
  ModuleMorphism incl = ModuleMorphism::unchecked(s.module, src, gens * s.from.action());
  (void)R;
  return {s.module, incl};
}

MorphismData cokernel(const ModuleMorphism& f) {
  const PresentedModule& tgt = f.target();
  PresentedModule coker(tgt.ring(), tgt.generators(),
                        drop_zero_columns(hstack(tgt.relations(), f.action())));
  return {coker, ModuleMorphism::unchecked(tgt, coker, Matrix::identity(tgt.ring(), tgt.generators()))};
}

KernelCokernelImage kernel_cokernel_image(const ModuleMorphism& f) {
  const PresentedModule& src = f.source();
  MorphismData ker = kernel(f);
  MorphismData coker = cokernel(f);
  // image = source / kernel, mapped into the target by the action
  PresentedModule image(src.ring(), src.generators(),
                        drop_zero_columns(hstack(src.relations(), ker.map.action())));
  ModuleMorphism into = ModuleMorphism::unchecked(image, f.target(), f.action());
  ModuleMorphism coimage =
      ModuleMorphism::unchecked(src, image, Matrix::identity(src.ring(), src.generators()));
  return {ker, coker, {image, into}, coimage};
}

Simplified simplify(const PresentedModule& m) {
  const Ring& R = m.ring();
  if (m.relations().cols() == 0 || m.relations().is_zero()) {
    PresentedModule clean = PresentedModule::free(R, m.generators());
    Matrix id = Matrix::identity(R, m.generators());
    return {clean, ModuleMorphism::unchecked(m, clean, id), ModuleMorphism::unchecked(clean, m, id)};
  }
  SmithDecomposition d = snf(m.relations());
  std::size_t k = std::min(m.relations().rows(), m.relations().cols());
  std::vector<std::size_t> kept;
  std::vector<Scalar> orders;
  for (std::size_t i = 0; i < m.generators(); ++i) {
    Scalar di = i < k ? d.S(i, i) : R.zero();
    if (R.is_unit(di)) continue;
    kept.push_back(i);
    orders.push_back(di);
  }
  std::vector<std::size_t> torsion_cols;
  Matrix rel(R, kept.size(), kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    rel.set(i, i, orders[i]);
    if (!R.is_zero(orders[i])) torsion_cols.push_back(i);
  }
  PresentedModule out(R, kept.size(), rel.select_cols(torsion_cols));
  return {out, ModuleMorphism::unchecked(m, out, d.U.select_rows(kept)),
          ModuleMorphism::unchecked(out, m, d.U_inv.select_cols(kept))};
}

DirectSum direct_sum(const std::vector<PresentedModule>& summands) {
  if (summands.empty()) throw DimensionMismatch("direct_sum of nothing: ring unknown");
  const Ring& R = summands.front().ring();
  std::size_t gens = 0, rels = 0;
  std::vector<std::size_t> offsets;
  for (const auto& s : summands) {
    offsets.push_back(gens);
    gens += s.generators();
    rels += s.relations().cols();
  }
  Matrix rel(R, gens, rels);
  std::size_t col = 0;
  for (std::size_t k = 0; k < summands.size(); ++k) {
    rel.paste(offsets[k], col, summands[k].relations());
    col += summands[k].relations().cols();
  }
  PresentedModule sum(R, gens, rel);
  DirectSum out{sum, {}, {}, offsets};
  for (std::size_t k = 0; k < summands.size(); ++k) {
    std::size_t g = summands[k].generators();
    Matrix inc(R, gens, g), proj(R, g, gens);
    for (std::size_t i = 0; i < g; ++i) {
      inc.set(offsets[k] + i, i, R.one());
      proj.set(i, offsets[k] + i, R.one());
    }
    out.inclusions.push_back(ModuleMorphism::unchecked(summands[k], sum, inc));
    out.projections.push_back(ModuleMorphism::unchecked(sum, summands[k], proj));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hom and tensor

ModuleMorphism HomModule::to_morphism(const Matrix& coordinates) const {
  Matrix v = basis * coordinates;
  return ModuleMorphism::unchecked(source, target, v.reshaped(target.generators(), source.generators()));
}

Matrix HomModule::coordinates(const Matrix& action) const {
  const Ring& R = source.ring();
  std::size_t gs = source.generators(), gt = target.generators();
  if (action.rows() != gt || action.cols() != gs) throw DimensionMismatch("coordinates: bad action shape");
  if (basis.rows() == basis.cols() && basis == Matrix::identity(R, basis.rows())) return action.vec();
  // basis * c == vec(action) modulo vec(rel_t * Z)
  Matrix ambient = kron(target.relations(), Matrix::identity(R, gs));
  auto sol = solve(hstack(basis, ambient), action.vec());
  if (!sol) throw IncompatibleWithRelations("action is not a homomorphism " + action.to_string());
  return first_rows(*sol, basis.cols());
}

HomModule hom_module(const PresentedModule& m, const PresentedModule& n) {
  if (m.ring() != n.ring()) throw DimensionMismatch("hom_module: different rings");
  const Ring& R = m.ring();
  std::size_t gm = m.generators(), gn = n.generators();
  std::size_t dim = gm * gn;
  const Matrix& rel_m = m.relations();
  const Matrix& rel_n = n.relations();

  Matrix candidates = Matrix::identity(R, dim);
  if (!rel_m.is_zero() && dim > 0) {
    // A * rel_m - rel_n * Y == 0
    Matrix system = hstack(kron(Matrix::identity(R, gn), rel_m.transpose()),
                           -kron(rel_n, Matrix::identity(R, rel_m.cols())));
    candidates = drop_zero_columns(first_rows(kernel_basis(system), dim));
  }
  Matrix trivial = kron(rel_n, Matrix::identity(R, gm));
  if (rel_n.is_zero() && candidates.cols() == dim && candidates == Matrix::identity(R, dim))
    return {PresentedModule::free(R, dim), m, n, candidates};

  std::size_t k = candidates.cols();
  PresentedModule raw(R, k, Matrix(R, k, 0));
  if (k > 0) {
    Matrix syz = kernel_basis(hstack(candidates, trivial));
    raw = PresentedModule(R, k, drop_zero_columns(first_rows(syz, k)));
  }
  Simplified s = simplify(raw);
  return {s.module, m, n, candidates * s.from.action()};
}

Matrix TensorModule::pair(const Matrix& x, const Matrix& y) const { return kron(x, y); }

TensorModule tensor_module(const PresentedModule& m, const PresentedModule& n) {
  if (m.ring() != n.ring()) throw DimensionMismatch("tensor_module: different rings");
  const Ring& R = m.ring();
  Matrix rel = hstack(kron(m.relations(), Matrix::identity(R, n.generators())),
                      kron(Matrix::identity(R, m.generators()), n.relations()));
  return {PresentedModule(R, m.generators() * n.generators(), drop_zero_columns(rel)), m, n};
}

// ---------------------------------------------------------------------------
// flatness

FlatnessReport flatness(const PresentedModule& m) {
  const Ring& R = m.ring();
  if (R.is_field()) return {true, true, true};
  auto factors = m.invariant_factors();
  if (R.kind() == RingKind::Integers) {
    bool torsion_free = true;
    for (const auto& d : factors) torsion_free = torsion_free && R.is_zero(d);
    return {torsion_free, torsion_free, torsion_free};
  }
  // Z/n: R/(d) is projective iff d is a unitary divisor of n, i.e. each
  // prime-power component is either trivial or of full order.
  const mpz_class& n = R.modulus();
  auto primes = factorize(n);
  bool projective = true;
  std::vector<std::size_t> full(primes.size(), 0);
  for (const auto& d : factors) {
    mpz_class order = R.is_zero(d) ? n : d.get_num();
    for (std::size_t k = 0; k < primes.size(); ++k) {
      unsigned v = valuation(order, primes[k].first);
      if (v != 0 && v != primes[k].second) projective = false;
      if (v == primes[k].second) ++full[k];
    }
  }
  bool free = projective;
  for (std::size_t k = 1; k < full.size(); ++k) free = free && full[k] == full[0];
  return {projective, projective, free};
}

std::optional<ModuleMorphism> section(const ModuleMorphism& p) {
  const PresentedModule& a = p.source();
  const PresentedModule& b = p.target();
  const Ring& R = a.ring();
  MorphismSystem sys(R);
  std::size_t s = sys.add_unknown(b, a);
  sys.add_equation(b, {{s, p.action(), Matrix::identity(R, b.generators())}},
                   Matrix::identity(R, b.generators()));
  auto res = sys.solve();
  if (!res) return std::nullopt;
  return ModuleMorphism(b, a, res.unknowns->front());
}

std::optional<ModuleMorphism> descend(const ModuleMorphism& f, const ModuleMorphism& p) {
  const PresentedModule& b = p.target();
  const Ring& R = b.ring();
  auto pre = solve_columns(hstack(p.action(), b.relations()), Matrix::identity(R, b.generators()));
  if (!pre) return std::nullopt;
  Matrix action = f.action() * first_rows(*pre, p.source().generators());
  try {
    ModuleMorphism g(b, f.target(), action);
    if (!(g * p).equals(f)) return std::nullopt;
    return g;
  } catch (const IncompatibleWithRelations&) {
    return std::nullopt;
  }
}

}  // namespace perfacto

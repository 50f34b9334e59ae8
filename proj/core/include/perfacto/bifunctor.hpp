#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "perfacto/complex.hpp"

namespace perfacto {

/// R concentrated in degree 0.
ChainComplex unit_complex(const Ring& ring);

/// Total Hom complex: Hom(M, N)_v = sum over i of Hom(M_i, N_{i+v}), with
/// differential  d(f) = d^N f - (-1)^v f d^M.
///
/// An element of degree v is a coordinate column over the generators of
/// component v; `maps` and `coordinates` translate between coordinates and
/// families of module homomorphisms M_i -> N_{i+v}.
struct TotalHom {
  struct Summand {
    int i;  ///< source degree; the summand is Hom(M_i, N_{i+v})
    HomModule hom;
    std::size_t offset;
  };

  ChainComplex source;
  ChainComplex target;
  ChainComplex complex;
  std::map<int, std::vector<Summand>> summands;

  std::map<int, ModuleMorphism> maps(int v, const Matrix& coordinates) const;
  /// Missing source degrees are treated as zero maps.
  Matrix coordinates(int v, const std::map<int, Matrix>& actions) const;

  /// Degree-0 cycles are exactly the chain maps source -> target.
  ChainMap to_chain_map(const Matrix& coordinates) const;
  Matrix from_chain_map(const ChainMap& f) const;
};

TotalHom total_hom(const ChainComplex& m, const ChainComplex& n);

/// Total tensor complex: (M (x) N)_v = sum over i of M_i (x) N_{v-i}, with
/// d(m (x) n) = dm (x) n + (-1)^{|m|} m (x) dn. Summands keep the generator
/// pair presentation, so coordinates are indexed by (i, j) pairs.
struct TotalTensor {
  struct Summand {
    int i;  ///< left degree; the summand is M_i (x) N_{v-i}
    TensorModule tensor;
    std::size_t offset;
  };

  ChainComplex left;
  ChainComplex right;
  ChainComplex complex;
  std::map<int, std::vector<Summand>> summands;

  const Summand* find(int v, int i) const;
};

TotalTensor total_tensor(const ChainComplex& m, const ChainComplex& n);

/// f -> beta * f * alpha from Hom(from.source, from.target) to
/// Hom(to.source, to.target), for alpha: to.source -> from.source and
/// beta: from.target -> to.target.
ChainMap hom_functor_map(const TotalHom& from, const TotalHom& to, const ChainMap& alpha,
                         const ChainMap& beta);
/// Hom(alpha, N) for alpha: M' -> M.
ChainMap hom_left(const ChainMap& alpha, const ChainComplex& n);
/// Hom(M, beta) for beta: N -> N'.
ChainMap hom_right(const ChainComplex& m, const ChainMap& beta);

/// alpha (x) beta, for alpha: from.left -> to.left and beta: from.right -> to.right.
ChainMap tensor_functor_map(const TotalTensor& from, const TotalTensor& to, const ChainMap& alpha,
                            const ChainMap& beta);
ChainMap tensor_left(const ChainMap& alpha, const ChainComplex& n);
ChainMap tensor_right(const ChainComplex& m, const ChainMap& beta);

/// A canonical morphism together with an isomorphism decision; when it is an
/// isomorphism the inverse has been verified on both sides in every degree.
struct CanonicalMorphismCertificate {
  ChainMap morphism;
  bool is_isomorphism = false;
  std::optional<ChainMap> inverse;
};

/// Decides bijectivity degreewise and, when bijective, builds and verifies
/// the two-sided inverse.
CanonicalMorphismCertificate certify(const ChainMap& morphism);

enum class BifunctorKind { Hom, Tensor };

/// Cone(Hom(M, alpha)) -> Hom(M, Cone(alpha)), (g, f) -> (g, f); or
/// Cone(M (x) alpha) -> M (x) Cone(alpha), m (x) n' -> m (x) (n', 0) and
/// m (x) n -> (-1)^{|m|} m (x) (0, n).
CanonicalMorphismCertificate cone_commute(const ChainComplex& m, const ChainMap& alpha,
                                          BifunctorKind which);

/// delta_M : M -> Hom(Hom(M, R), R),  delta(m)(psi) = (-1)^{|psi||m|} psi(m).
ChainMap biduality_map(const ChainComplex& m);
CanonicalMorphismCertificate biduality(const ChainComplex& m);

/// theta : Hom(M, R) (x) N -> Hom(M, R (x) N),
/// theta(psi (x) n)(m) = (-1)^{|m||n|} psi(m) (x) n.
ChainMap tensor_evaluation_map(const ChainComplex& m, const ChainComplex& n);
CanonicalMorphismCertificate tensor_evaluation(const ChainComplex& m, const ChainComplex& n);

/// eta : Hom(R, N) (x) M -> Hom(Hom(M, R), N),
/// eta(psi (x) m)(phi) = (-1)^{|phi||m|} psi(phi(m)).
ChainMap hom_evaluation_map(const ChainComplex& n, const ChainComplex& m);
CanonicalMorphismCertificate hom_evaluation(const ChainComplex& n, const ChainComplex& m);

/// xi^M : Hom(M, R) (x) F -> Hom(M, F): tensor evaluation followed by the
/// identification R (x) F = F.
ChainMap xi(const ChainComplex& m, const ChainComplex& f);
/// The identification R (x) F -> F (identity on generators).
ChainMap unit_tensor_iso(const ChainComplex& f);

/// Whether Hom(delta_P, R) * delta_{Hom(P, R)} is the identity of Hom(P, R).
bool bid_inverse_check(const ChainComplex& p);

/// Builds the chain map whose degree-v component sends generator j of
/// source_v to image(v, j), a coordinate column of target_v.
ChainMap chain_map_from_generators(const ChainComplex& source, const ChainComplex& target,
                                   const std::function<Matrix(int, std::size_t)>& image);

}  // namespace perfacto

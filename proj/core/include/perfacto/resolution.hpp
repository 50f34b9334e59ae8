#pragma once

#include <optional>
#include <vector>

#include "perfacto/colimit.hpp"
#include "perfacto/complex.hpp"

namespace perfacto {

/// The chain map disc(v, F) -> M with components pi in degree v and
/// d_v * pi in degree v - 1. F must be a free presentation.
ChainMap disc_surjection(const ModuleMorphism& pi, const ChainComplex& m, int v);

/// An exact sequence L1 -> L0 -> M -> 0 with L0, L1 bounded complexes of
/// finitely generated free modules. L0 is a sum of discs disc(v, F^v), one
/// for each degree v where M_v has generators, with F^v free on those
/// generators; L1 is built the same way over ker(psi0).
struct ComplexPresentation {
  ChainComplex L1;
  ChainComplex L0;
  ChainMap psi1;  ///< L1 -> L0
  ChainMap psi0;  ///< L0 -> M

  /// psi0 degreewise surjective and im(psi1) == ker(psi0) in every degree.
  bool is_exact() const;
};

ComplexPresentation present_complex(const ChainComplex& m);

/// A surjective map from a bounded-below complex of finitely generated free
/// modules, truncated at `ceiling`: H(pi) is an isomorphism in degrees below
/// the ceiling and surjective at it.
struct SemifreeResolution {
  ChainComplex P;
  ChainMap pi;  ///< P -> M
  int window_lo;
  int ceiling;
};

/// Built one degree at a time: the generators of P_v are the pairs (z, m)
/// with z a cycle of P_{v-1} and pi(z) = d m, so P_v = 0 below inf M.
/// Throws HypothesisViolation when the ceiling is below sup M.
SemifreeResolution semifree_resolution(const ChainComplex& m, int ceiling);

/// A degree-one map sigma with d = d sigma d and d sigma + sigma d = id.
struct Contraction {
  Homotopy sigma;

  bool verify() const;
};

/// Solves for sigma in all degrees at once (the identity condition couples
/// adjacent degrees); present iff C is contractible.
std::optional<Contraction> contraction(const ChainComplex& c);

/// A homotopy h with d h + h d = id, solved directly.
std::optional<Homotopy> null_homotopy(const ChainComplex& c);

struct FactorizationTrace {
  ComplexPresentation presentation;
  ChainMap kernel_inclusion;  ///< K -> Hom(L0, R)
  SemifreeResolution resolution;
  int rounds = 0;
  Matrix x;                   ///< the degree-0 cycle of P (x) F, as coordinates
  ChainComplex P_prime;
  ChainMap P_prime_inclusion; ///< P' -> P
  ChainMap kappa_prime;       ///< L0 -> L
};

/// phi = lambda * kappa with L bounded and degreewise finitely generated free.
struct FactorizationCertificate {
  ChainComplex L;
  ChainMap kappa;   ///< N -> L
  ChainMap lambda;  ///< L -> F
  FactorizationTrace trace;

  /// Recomputes lambda * kappa and compares it with phi; checks L is perfect.
  bool verify(const ChainMap& phi) const;
};

/// The resolution ceiling is max(sup K, -inf F) + margin; a ceiling below
/// sup K counts as a failed round.
struct FactorizationOptions {
  int initial_margin = 2;
  int max_rounds = 3;
};

/// Factors phi: N -> F through a perfect complex when F is bounded and
/// degreewise flat: present N, dualize, resolve the kernel K, solve for a
/// cycle x of P (x) F hitting phi * psi0, cut P down to the finite
/// subcomplex P' supporting x, and set L = Hom(P', R).
///
/// The resolution window grows (margin doubled) when the solve fails;
/// WindowExhausted after `max_rounds`. HypothesisViolation for non-flat F.
FactorizationCertificate factor_through_perfect(const ChainMap& phi,
                                                const FactorizationOptions& options = {});

/// phi = lambda * kappa through a finite sum L of discs disc(v, R).
struct ContractibleFactorization {
  ChainComplex L;
  ChainMap kappa;   ///< N -> L
  ChainMap lambda;  ///< L -> C
};

/// For C bounded contractible with projective components; HypothesisViolation
/// otherwise.
ContractibleFactorization factor_through_contractible(const ChainMap& phi);

struct AcyclicSemiflatReport {
  bool acyclic = false;
  bool boundaries_flat = false;
  bool degreewise_projective = false;
  std::optional<Contraction> contraction;  ///< when acyclic and projective
};

AcyclicSemiflatReport classify_acyclic_semiflat(const ChainComplex& f);

/// A probe for semi-projectivity: alpha: P -> N' and a surjective
/// quasi-isomorphism beta: M -> N'.
struct SemiProjectiveProbe {
  ChainMap alpha;
  ChainMap beta;
};

struct SemiProjectiveVerdict {
  bool holds = false;
  std::vector<ChainMap> lifts;  ///< gamma with beta * gamma == alpha
  std::optional<std::size_t> failing_probe;
  std::optional<LiftOutcome> failure;
};

/// HypothesisViolation when some beta is not a surjective quasi-isomorphism.
SemiProjectiveVerdict is_semi_projective_probe(const ChainComplex& p,
                                               const std::vector<SemiProjectiveProbe>& probes);

/// For bounded complexes: every component flat.
bool is_semi_flat_desk(const ChainComplex& f);

}  // namespace perfacto

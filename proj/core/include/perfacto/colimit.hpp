#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perfacto/complex.hpp"
#include "perfacto/linalg.hpp"

namespace perfacto {

enum class DiagramShape { Coproduct, Coequalizer, Pushout, Poset };

std::string to_string(DiagramShape shape);

/// A finite diagram of complexes.
///
/// Shape conventions:
///   - Coproduct: any number of objects, no arrows.
///   - Coequalizer: objects {X, Y}, two arrows X -> Y.
///   - Pushout: objects {M, A, B}, arrows M -> A and M -> B.
///   - Poset: arrows i -> j for related pairs i <= j; whenever i -> j, j -> k
///     and i -> k are all present, the composite must agree (functoriality).
struct FiniteDiagram {
  struct Arrow {
    std::size_t from;
    std::size_t to;
    ChainMap map;
  };

  DiagramShape shape;
  std::vector<ChainComplex> objects;
  std::vector<Arrow> arrows;

  static FiniteDiagram coproduct(std::vector<ChainComplex> objects);
  static FiniteDiagram coequalizer(const ChainMap& f, const ChainMap& g);
  static FiniteDiagram pushout(const ChainMap& f, const ChainMap& g);
  static FiniteDiagram poset(std::vector<ChainComplex> objects, std::vector<Arrow> arrows);

  /// Throws DimensionMismatch or NotAChainMap-style Errors on inconsistent
  /// endpoints, shape violations, or non-commuting poset triangles.
  void validate() const;
  /// Index of an object every other object maps to, if the shape is Poset
  /// and such a maximum exists.
  std::optional<std::size_t> maximum() const;
};

/// The colimit with its universal cocone. The complex is the cokernel of
///   sum over arrows a: D(a.from) -> sum over objects,  x -> a(x) - x,
/// with components simplified.
struct Colimit {
  ChainComplex complex;
  std::vector<ChainMap> cocone;  ///< D(k) -> colimit
  ChainMap quotient;             ///< sum of objects -> colimit
};

Colimit colimit(const FiniteDiagram& d);

/// Whether maps D(k) -> Y form a cocone (compatible with every arrow).
bool is_cocone(const FiniteDiagram& d, const std::vector<ChainMap>& legs);

/// The unique u: colim D -> Y with u * cocone[k] == legs[k]; absent when the
/// legs are not a cocone.
std::optional<ChainMap> mediating_map(const FiniteDiagram& d, const Colimit& c,
                                      const std::vector<ChainMap>& legs);

/// Functors whose colimit behaviour is probed.
struct ComplexFunctor {
  enum class Kind { Z, B, C, H, TensorWith, HomFrom };
  Kind kind;
  std::optional<ChainComplex> argument;  ///< N for TensorWith, P for HomFrom

  static ComplexFunctor graded(GradedFunctor f);
  static ComplexFunctor tensor_with(const ChainComplex& n);
  static ComplexFunctor hom_from(const ChainComplex& p);

  ChainComplex apply(const ChainComplex& m) const;
  ChainMap apply(const ChainMap& f) const;
  std::string name() const;
};

struct PreservationReport {
  /// The canonical comparison colim F(D) -> F(colim D).
  ChainMap comparison;
  bool is_isomorphism = false;
};

/// Throws HypothesisViolation for HomFrom(P) unless P is bounded with finitely
/// generated projective components.
PreservationReport preservation_check(const ComplexFunctor& functor, const FiniteDiagram& d);

/// The outcome of deciding whether phi: N -> Y factors as alpha * beta for a
/// chain map beta: N -> X. When absent, `obstruction` certifies that the
/// flattened linear system (kept in `system`, `rhs`) has no solution.
struct LiftOutcome {
  std::optional<ChainMap> lift;
  std::optional<Unsolvability> obstruction;
  Matrix system;
  Matrix rhs;

  explicit operator bool() const { return lift.has_value(); }
  bool certificate_verifies() const {
    return obstruction.has_value() && obstruction->verify(system, rhs);
  }
};

LiftOutcome lift_chain_map(const ChainMap& phi, const ChainMap& alpha);

struct Probe {
  ChainComplex source;
  ChainMap map;  ///< source -> target of the map under test
};

/// Probes generating Hom(disc(v, R), Y) and Hom(R@v, Y) for v in [lo, hi];
/// lifting against these decides lifting against every map out of finite
/// sums of discs and spheres.
std::vector<Probe> standard_probes(const ChainComplex& y, int lo, int hi);
std::vector<Probe> standard_probes(const ChainComplex& y);

struct PurityVerdict {
  bool pure = false;
  std::vector<ChainMap> lifts;  ///< one per probe, when pure
  struct Counterexample {
    std::size_t probe_index;
    Probe probe;
    LiftOutcome outcome;
  };
  std::optional<Counterexample> counterexample;
};

/// Purity of alpha relative to the given probes; probes are solved
/// concurrently and the lowest-index failure is reported.
PurityVerdict is_pure_epi(const ChainMap& alpha, const std::vector<Probe>& probes);

}  // namespace perfacto

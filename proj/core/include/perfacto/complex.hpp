#pragma once

#include <map>
#include <string>
#include <vector>

#include "perfacto/module.hpp"

namespace perfacto {

/// Bounded complex of finitely presented modules, homologically graded:
/// the differential in degree v maps component(v) to component(v - 1).
///
/// The support [lo, hi] is explicit and finite; components outside it are
/// zero. Construction verifies d(v - 1) * d(v) == 0 in every degree.
class ChainComplex {
 public:
  /// `differentials[k]` is the differential in degree lo + k + 1, so there
  /// are modules.size() - 1 of them (none for an empty support).
  ChainComplex(Ring ring, int lo, std::vector<PresentedModule> modules,
               std::vector<ModuleMorphism> differentials);

  static ChainComplex zero(const Ring& ring);
  /// The module m placed in degree v ("m@v").
  static ChainComplex concentrated(const PresentedModule& m, int v);

  const Ring& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool in_support(int v) const { return v >= lo_ && v <= hi_; }

  const PresentedModule& component(int v) const;
  /// d_v : component(v) -> component(v - 1); zero outside the support.
  ModuleMorphism differential(int v) const;

  /// True when every component is the zero module.
  bool is_zero() const;
  /// True when every component is a free presentation (no relations).
  bool is_degreewise_free_presented() const;
  /// Smallest and largest degree carrying a nonzero module; lo > hi when zero.
  int inf() const;
  int sup() const;

  std::string describe() const;

 private:
  Ring ring_;
  int lo_;
  int hi_;
  std::vector<PresentedModule> modules_;
  std::vector<ModuleMorphism> differentials_;
  PresentedModule zero_module_;
};

/// Assembles and validates a complex from sparse degree maps; missing
/// modules are zero and missing differentials are zero maps.
ChainComplex make_complex(const Ring& ring, int lo, int hi,
                          const std::map<int, PresentedModule>& modules,
                          const std::map<int, Matrix>& differentials);

/// Intensional equality: same ring, components and differentials.
bool identical(const ChainComplex& a, const ChainComplex& b);

/// Degreewise morphisms commuting with the differentials.
class ChainMap {
 public:
  /// `components` maps degree -> component; missing degrees are zero maps.
  /// Throws NotAChainMap when some square fails to commute.
  ChainMap(ChainComplex source, ChainComplex target, std::map<int, ModuleMorphism> components);

  static ChainMap identity(const ChainComplex& c);
  static ChainMap zero(const ChainComplex& source, const ChainComplex& target);
  /// Builds from action matrices, checking relation compatibility.
  static ChainMap from_actions(const ChainComplex& source, const ChainComplex& target,
                               const std::map<int, Matrix>& actions);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  ModuleMorphism component(int v) const;

  /// Degreewise equality of homomorphisms.
  bool equals(const ChainMap& other) const;
  bool is_zero() const;
  bool is_degreewise_surjective() const;
  bool is_degreewise_injective() const;
  bool is_degreewise_isomorphism() const;

  ChainMap operator-() const;
  friend ChainMap operator+(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator-(const ChainMap& a, const ChainMap& b);
  /// Composition (g * f)_v = g_v * f_v.
  friend ChainMap operator*(const ChainMap& g, const ChainMap& f);

 private:
  struct Trusted {};
  ChainMap(ChainComplex source, ChainComplex target, std::map<int, ModuleMorphism> components,
           Trusted);
  friend ChainMap make_chain_map_unchecked(ChainComplex, ChainComplex,
                                           std::map<int, ModuleMorphism>);

  ChainComplex source_;
  ChainComplex target_;
  std::map<int, ModuleMorphism> components_;
};

/// For maps that commute by construction; skips the commutation check.
ChainMap make_chain_map_unchecked(ChainComplex source, ChainComplex target,
                                  std::map<int, ModuleMorphism> components);

/// Degree +1 maps h_v : source_v -> target_{v+1}.
struct Homotopy {
  ChainComplex source;
  ChainComplex target;
  std::map<int, ModuleMorphism> components;

  ModuleMorphism component(int v) const;
  /// The chain map d h + h d : source -> target.
  ChainMap boundary() const;
};

/// (Sigma M)_v = M_{v-1} with negated differential.
ChainComplex shift(const ChainComplex& m);
ChainMap shift(const ChainMap& f);

/// 0 -> F -> F -> 0 with identity differential, in degrees v and v - 1.
ChainComplex disc(int v, const PresentedModule& f);

/// Direct sum of complexes with structure maps.
struct ComplexSum {
  ChainComplex complex;
  std::vector<ChainMap> inclusions;
  std::vector<ChainMap> projections;
};

ComplexSum direct_sum(const std::vector<ChainComplex>& summands);

/// Cone(alpha)_v = N_v + M_{v-1}, d(n, m) = (d n + alpha m, -d m).
///
/// `inclusion` and `projection` form the degreewise split exact sequence
/// 0 -> N -> Cone -> Sigma M -> 0; `section` and `retraction` are the
/// degreewise splittings (not chain maps).
struct ConeData {
  ChainComplex complex;
  ChainMap inclusion;
  ChainMap projection;
  std::map<int, ModuleMorphism> section;     ///< (Sigma M)_v -> Cone_v
  std::map<int, ModuleMorphism> retraction;  ///< Cone_v -> N_v
};

ConeData cone(const ChainMap& alpha);

/// The graded pieces Z, B, H, C of a complex, each with zero differential,
/// together with their structure maps into (or out of) the complex.
struct GradedPieces {
  ChainComplex Z, B, H, C;
  std::map<int, ModuleMorphism> cycles_in;      ///< Z_v -> M_v
  std::map<int, ModuleMorphism> boundaries_in;  ///< B_v -> M_v
  std::map<int, ModuleMorphism> cycles_to_homology;  ///< Z_v -> H_v
  std::map<int, ModuleMorphism> to_cokernel;    ///< M_v -> C_v
};

GradedPieces zbhc(const ChainComplex& m);

enum class GradedFunctor { Z, B, H, C };

const ChainComplex& piece(const GradedPieces& p, GradedFunctor f);
/// Action of Z, B, H or C on a chain map, between the given pieces of its
/// source and target.
ChainMap zbhc_map(const ChainMap& alpha, GradedFunctor f, const GradedPieces& source,
                  const GradedPieces& target);
ChainMap zbhc_map(const ChainMap& alpha, GradedFunctor f);

/// Homology descriptions per degree in invariant-factor form.
std::map<int, std::string> homology_report(const ChainComplex& m);

bool is_acyclic(const ChainComplex& m);
/// Decided twice: via H(alpha) and via acyclicity of the cone. Disagreement
/// raises an Error.
bool is_quasi_iso(const ChainMap& alpha);
bool is_quasi_iso_by_homology(const ChainMap& alpha);
bool is_quasi_iso_by_cone(const ChainMap& alpha);

/// ker(alpha) as a subcomplex of the source, with its inclusion.
ChainMap kernel_complex(const ChainMap& alpha);
/// coker(alpha) as a quotient of the target, with the projection.
ChainMap cokernel_complex(const ChainMap& alpha);
/// im(alpha), presented as a quotient of the source, with its map into the
/// target.
ChainMap image_complex(const ChainMap& alpha);

/// An isomorphic complex with every component in invariant-factor form.
struct SimplifiedComplex {
  ChainComplex complex;
  ChainMap to;    ///< original -> simplified
  ChainMap from;  ///< simplified -> original
};

SimplifiedComplex simplify(const ChainComplex& m);

/// X with mono * X == f, for f landing inside the image of the monomorphism.
std::optional<ModuleMorphism> lift_through(const ModuleMorphism& f, const ModuleMorphism& mono);

}  // namespace perfacto

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perfacto/linalg.hpp"

namespace perfacto {

/// A module R^g / (column span of `relations`).
///
/// Equality is intensional: two presentations compare equal only when they
/// are literally the same data. Mathematical comparisons go through
/// morphisms and their isomorphism decisions.
class PresentedModule {
 public:
  PresentedModule(Ring ring, std::size_t generators, Matrix relations);

  static PresentedModule free(const Ring& ring, std::size_t rank);
  static PresentedModule zero(const Ring& ring) { return free(ring, 0); }
  /// R / (a)
  static PresentedModule cyclic(const Ring& ring, const Scalar& a);

  const Ring& ring() const { return ring_; }
  std::size_t generators() const { return generators_; }
  const Matrix& relations() const { return relations_; }

  /// True when the relation matrix is zero, i.e. the generators form a basis.
  bool is_free_presentation() const { return relations_.is_zero(); }
  bool is_zero() const;
  /// Whether the column vectors x and y represent the same element.
  bool same_element(const Matrix& x, const Matrix& y) const;
  bool is_trivial_element(const Matrix& x) const;
  /// Canonical coordinates of an element in the Smith basis of the relations;
  /// equal elements have equal normal forms.
  Matrix normal_form(const Matrix& x) const;

  /// The module is the direct sum of R/(d) over the returned d's, with d = 0
  /// standing for a free summand. Units are omitted.
  std::vector<Scalar> invariant_factors() const;
  /// Number of elements, 0 when infinite.
  mpz_class cardinality() const;
  /// Invariant-factor description, e.g. "Z^2 + Z/6".
  std::string describe() const;

  friend bool operator==(const PresentedModule& a, const PresentedModule& b) {
    return a.ring_ == b.ring_ && a.generators_ == b.generators_ && a.relations_ == b.relations_;
  }

 private:
  Ring ring_;
  std::size_t generators_;
  Matrix relations_;
};

PresentedModule make_module(const Ring& ring, std::size_t generators, const Matrix& relations);

/// Homomorphism given by its action on generators (target.generators x
/// source.generators). Construction verifies that source relations are sent
/// into the span of the target relations.
class ModuleMorphism {
 public:
  ModuleMorphism(PresentedModule source, PresentedModule target, Matrix action);

  /// Skips the compatibility solve; only for maps that are well defined by
  /// construction (identities, zero maps, structure maps of direct sums).
  static ModuleMorphism unchecked(PresentedModule source, PresentedModule target, Matrix action);
  static ModuleMorphism identity(const PresentedModule& m);
  static ModuleMorphism zero(const PresentedModule& source, const PresentedModule& target);

  const PresentedModule& source() const { return source_; }
  const PresentedModule& target() const { return target_; }
  const Matrix& action() const { return action_; }

  Matrix apply(const Matrix& element) const { return action_ * element; }
  /// Equality as homomorphisms (actions may differ by target relations).
  bool equals(const ModuleMorphism& other) const;
  bool is_zero() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }
  /// Two-sided inverse when this is an isomorphism.
  std::optional<ModuleMorphism> inverse() const;

  ModuleMorphism operator-() const;
  friend ModuleMorphism operator+(const ModuleMorphism& a, const ModuleMorphism& b);
  friend ModuleMorphism operator-(const ModuleMorphism& a, const ModuleMorphism& b);
  /// Composition: (g * f)(x) = g(f(x)).
  friend ModuleMorphism operator*(const ModuleMorphism& g, const ModuleMorphism& f);

 private:
  struct Trusted {};
  ModuleMorphism(PresentedModule source, PresentedModule target, Matrix action, Trusted);

  PresentedModule source_;
  PresentedModule target_;
  Matrix action_;
};

ModuleMorphism make_morphism(const PresentedModule& source, const PresentedModule& target,
                             const Matrix& action);

/// A module together with a morphism linking it to the input.
struct MorphismData {
  PresentedModule module;
  ModuleMorphism map;
};

struct KernelCokernelImage {
  MorphismData kernel;     ///< map: kernel -> source
  MorphismData cokernel;   ///< map: target -> cokernel
  MorphismData image;      ///< map: image -> target
  ModuleMorphism coimage;  ///< source -> image, with image.map * coimage == f
};

KernelCokernelImage kernel_cokernel_image(const ModuleMorphism& f);
MorphismData kernel(const ModuleMorphism& f);
MorphismData cokernel(const ModuleMorphism& f);

/// An isomorphic presentation in invariant-factor form, with the two
/// comparison isomorphisms.
struct Simplified {
  PresentedModule module;
  ModuleMorphism to;    ///< original -> simplified
  ModuleMorphism from;  ///< simplified -> original
};

/// Presentations with zero relations are returned unchanged.
Simplified simplify(const PresentedModule& m);

/// Submodule of `ambient` generated by the columns of `generators`, presented
/// on those columns.
PresentedModule submodule_presentation(const PresentedModule& ambient, const Matrix& generators);

/// Direct sum with its canonical inclusions and projections.
struct DirectSum {
  PresentedModule module;
  std::vector<ModuleMorphism> inclusions;
  std::vector<ModuleMorphism> projections;
  std::vector<std::size_t> offsets;
};

DirectSum direct_sum(const std::vector<PresentedModule>& summands);

/// Hom(M, N) as a presented module. Element coordinates correspond to the
/// homomorphism whose row-major vectorized action is basis * coordinates.
struct HomModule {
  PresentedModule module;
  PresentedModule source;
  PresentedModule target;
  Matrix basis;

  ModuleMorphism to_morphism(const Matrix& coordinates) const;
  /// Coordinates of a homomorphism source -> target.
  Matrix coordinates(const Matrix& action) const;
};

HomModule hom_module(const PresentedModule& m, const PresentedModule& n);

/// M (x) N presented on generator pairs (i, j) at index i * n.generators + j.
struct TensorModule {
  PresentedModule module;
  PresentedModule left;
  PresentedModule right;

  /// The bilinear structure map (x, y) -> x (x) y on coordinate columns.
  Matrix pair(const Matrix& x, const Matrix& y) const;
};

TensorModule tensor_module(const PresentedModule& m, const PresentedModule& n);

/// free implies projective implies flat.
struct FlatnessReport {
  bool flat = false;
  bool projective = false;
  bool free = false;
};

FlatnessReport flatness(const PresentedModule& m);

/// Section s of a surjection p onto a projective module (p * s == id), if one
/// exists.
std::optional<ModuleMorphism> section(const ModuleMorphism& p);

/// Given a surjection p: A -> B and f: A -> C vanishing on ker p, the unique
/// g: B -> C with g * p == f. Absent when f does not descend.
std::optional<ModuleMorphism> descend(const ModuleMorphism& f, const ModuleMorphism& p);

}  // namespace perfacto

#pragma once

#include <cstdint>
#include <random>

#include "perfacto/complex.hpp"

namespace perfacto {

/// Seeded generator of small ("desk-scale") instances for property suites.
///
/// Differentials and chain maps are drawn as random combinations of the
/// generators of the relevant solution modules, so every output is valid by
/// construction rather than by rejection.
class DeskGenerator {
 public:
  enum class Components {
    Any,         ///< arbitrary finitely presented modules
    Projective,  ///< projective summands (free over Z, also Z/d with d | n unitary over Z/n)
    Free,        ///< free presentations
  };

  DeskGenerator(Ring ring, std::uint64_t seed) : ring_(std::move(ring)), rng_(seed) {}

  const Ring& ring() const { return ring_; }
  std::mt19937_64& engine() { return rng_; }

  int uniform(int lo, int hi);
  bool coin(double p = 0.5);
  Scalar scalar();

  PresentedModule module(std::size_t max_generators, Components kind = Components::Any);
  /// Random element of Hom(m, n) as a morphism.
  ModuleMorphism morphism(const PresentedModule& m, const PresentedModule& n);
  ChainComplex complex(int lo, int hi, std::size_t max_generators,
                       Components kind = Components::Any);
  /// Random chain map source -> target (possibly zero when few exist).
  ChainMap chain_map(const ChainComplex& source, const ChainComplex& target);

 private:
  Matrix combine(const std::vector<Matrix>& generators, std::size_t rows, std::size_t cols);

  Ring ring_;
  std::mt19937_64 rng_;
};

}  // namespace perfacto

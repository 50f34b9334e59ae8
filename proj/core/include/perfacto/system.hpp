#pragma once

#include <optional>
#include <vector>

#include "perfacto/module.hpp"

namespace perfacto {

/// Linear system whose unknowns are homomorphisms between presented modules.
///
/// Each unknown X: S -> T contributes its action matrix together with the
/// constraint that X kills the relations of S modulo those of T. Each
/// equation reads  sum_k L_k * X_k * K_k == rhs  modulo the relations of a
/// named module. Everything is flattened into one matrix and handed to the
/// Smith solver, so existence is decided exactly.
class MorphismSystem {
 public:
  struct Term {
    std::size_t unknown;
    Matrix left;
    Matrix right;
  };

  struct Result {
    std::optional<std::vector<Matrix>> unknowns;
    std::optional<Unsolvability> obstruction;
    explicit operator bool() const { return unknowns.has_value(); }
  };

  explicit MorphismSystem(Ring ring) : ring_(std::move(ring)) {}

  std::size_t add_unknown(const PresentedModule& source, const PresentedModule& target);
  /// rhs has shape modulo.generators() x q, where q is the common column
  /// count of every L_k * X_k * K_k.
  void add_equation(const PresentedModule& modulo, std::vector<Term> terms, Matrix rhs);

  Result solve() const;
  /// Generators of the solution module of the homogeneous system (all
  /// right-hand sides replaced by zero), one vector of unknowns each.
  std::vector<std::vector<Matrix>> homogeneous_generators() const;
  /// Coefficient matrix and right-hand side of the flattened system.
  std::pair<Matrix, Matrix> flatten() const;

  const PresentedModule& unknown_source(std::size_t k) const { return unknowns_[k].source; }
  const PresentedModule& unknown_target(std::size_t k) const { return unknowns_[k].target; }

 private:
  struct Unknown {
    PresentedModule source;
    PresentedModule target;
  };
  struct Equation {
    PresentedModule modulo;
    std::vector<Term> terms;
    Matrix rhs;
  };

  Ring ring_;
  std::vector<Unknown> unknowns_;
  std::vector<Equation> equations_;
};

}  // namespace perfacto

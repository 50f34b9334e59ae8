#pragma once

#include <optional>
#include <vector>

#include "perfacto/matrix.hpp"

namespace perfacto {

/// U * A * V == S with S diagonal, U and V invertible over the ring, and the
/// diagonal forming a divisibility chain d_1 | d_2 | ... (zeros last).
struct SmithDecomposition {
  Matrix S;
  Matrix U;
  Matrix V;
  Matrix U_inv;
  Matrix V_inv;
  std::size_t rank = 0;  ///< number of nonzero diagonal entries

  std::vector<Scalar> diagonal() const;
};

/// Smith normal form. Pivot rule: smallest norm, ties broken by lowest row
/// then lowest column, so results are reproducible. Over Z/n the gcd steps
/// run on integer representatives and every entry is projected back mod n.
SmithDecomposition snf(const Matrix& a);

/// Witness that A x = b has no solution: a row vector w with w*A in the
/// ideal (modulus) entrywise while w*b is not.
struct Unsolvability {
  Matrix witness;
  Scalar modulus;

  bool verify(const Matrix& a, const Matrix& b) const;
};

struct SolveOutcome {
  std::optional<Matrix> solution;
  std::optional<Unsolvability> obstruction;

  explicit operator bool() const { return solution.has_value(); }
};

/// Solves A x = b for a single column b.
SolveOutcome solve_certified(const Matrix& a, const Matrix& b);
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
/// Solves A X = B column by column with one decomposition of A.
std::optional<Matrix> solve_columns(const Matrix& a, const Matrix& b);

/// Columns generate { x : A x = 0 } as a module.
Matrix kernel_basis(const Matrix& a);

/// Whether every column of b lies in the column span of a.
bool in_column_span(const Matrix& a, const Matrix& b);

}  // namespace perfacto

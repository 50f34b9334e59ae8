#include "perfacto/linalg.hpp"

#include "perfacto/errors.hpp"

namespace perfacto {

namespace {

// Elimination state: S = U A V, with the inverses of U and V maintained
// alongside so callers can change bases in both directions.
class SmithEngine {
 public:
  explicit SmithEngine(const Matrix& a)
      : R(a.ring()),
        m(a.rows()),
        n(a.cols()),
        S(a),
        U(Matrix::identity(R, m)),
        Ui(Matrix::identity(R, m)),
        V(Matrix::identity(R, n)),
        Vi(Matrix::identity(R, n)) {}

  SmithDecomposition run() {
    std::size_t steps = std::min(m, n);
    std::size_t rank = 0;
    for (std::size_t t = 0; t < steps; ++t) {
      if (!place_pivot(t)) break;
      reduce_at(t);
      ++rank;
    }
    return SmithDecomposition{S, U, V, Ui, Vi, rank};
  }

 private:
  bool place_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    mpz_class best_norm;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (R.is_zero(S(i, j))) continue;
        mpz_class nrm = R.norm(S(i, j));
        if (!best || nrm < best_norm) {
          best = {i, j};
          best_norm = nrm;
        }
      }
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  void reduce_at(std::size_t t) {
    for (;;) {
      normalize_pivot(t);
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        Scalar a = S(i, t);
        if (R.is_zero(a)) continue;
        const Scalar p = S(t, t);
        if (R.divides(p, a)) {
          add_row(i, t, R.neg(R.exact_div(a, p)));
        } else {
          Gcdex g = R.gcdex(p, a);
          combine_rows(t, i, g);
          normalize_pivot(t);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        Scalar a = S(t, j);
        if (R.is_zero(a)) continue;
        const Scalar p = S(t, t);
        if (R.divides(p, a)) {
          add_col(j, t, R.neg(R.exact_div(a, p)));
        } else {
          Gcdex g = R.gcdex(p, a);
          combine_cols(t, j, g);
          normalize_pivot(t);
          dirty = true;
        }
      }
      if (dirty || !line_clear(t)) continue;
      // divisibility chain: the pivot must divide the remaining block
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!R.divides(S(t, t), S(i, j))) {
            add_row(t, i, R.one());
            fixed = true;
            break;
          }
      if (!fixed) return;
    }
  }

  bool line_clear(std::size_t t) const {
    for (std::size_t i = t + 1; i < m; ++i)
      if (!R.is_zero(S(i, t))) return false;
    for (std::size_t j = t + 1; j < n; ++j)
      if (!R.is_zero(S(t, j))) return false;
    return true;
  }

  void normalize_pivot(std::size_t t) {
    auto [assoc, unit] = R.normalize(S(t, t));
    if (unit == R.one()) return;
    scale_row(t, unit);
  }

  // row ops: S <- E S, U <- E U, Ui <- Ui E^-1
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < n; ++j) swap_entries(S, a, j, b, j);
    for (std::size_t j = 0; j < m; ++j) swap_entries(U, a, j, b, j);
    for (std::size_t i = 0; i < m; ++i) swap_entries(Ui, i, a, i, b);
  }

  void add_row(std::size_t target, std::size_t source, const Scalar& c) {
    for (std::size_t j = 0; j < n; ++j) S.add_to(target, j, c * S(source, j));
    for (std::size_t j = 0; j < m; ++j) U.add_to(target, j, c * U(source, j));
    for (std::size_t i = 0; i < m; ++i) Ui.add_to(i, source, -c * Ui(i, target));
  }

  void scale_row(std::size_t r, const Scalar& unit) {
    Scalar inv = R.inverse(unit);
    for (std::size_t j = 0; j < n; ++j) S.set(r, j, unit * S(r, j));
    for (std::size_t j = 0; j < m; ++j) U.set(r, j, unit * U(r, j));
    for (std::size_t i = 0; i < m; ++i) Ui.set(i, r, inv * Ui(i, r));
  }

  // rows (a, b) <- [[s, t], [u, v]] (rows a, b)
  void combine_rows(std::size_t a, std::size_t b, const Gcdex& g) {
    auto mix = [&](Matrix& M, std::size_t width) {
      for (std::size_t j = 0; j < width; ++j) {
        Scalar x = M(a, j), y = M(b, j);
        M.set(a, j, g.s * x + g.t * y);
        M.set(b, j, g.u * x + g.v * y);
      }
    };
    mix(S, n);
    mix(U, m);
    Scalar det_inv = R.inverse(R.reduce(g.s * g.v - g.t * g.u));
    for (std::size_t i = 0; i < m; ++i) {
      Scalar x = Ui(i, a), y = Ui(i, b);
      Ui.set(i, a, det_inv * (g.v * x - g.u * y));
      Ui.set(i, b, det_inv * (-g.t * x + g.s * y));
    }
  }

  // column ops: S <- S E, V <- V E, Vi <- E^-1 Vi
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m; ++i) swap_entries(S, i, a, i, b);
    for (std::size_t i = 0; i < n; ++i) swap_entries(V, i, a, i, b);
    for (std::size_t j = 0; j < n; ++j) swap_entries(Vi, a, j, b, j);
  }

  void add_col(std::size_t target, std::size_t source, const Scalar& c) {
    for (std::size_t i = 0; i < m; ++i) S.add_to(i, target, c * S(i, source));
    for (std::size_t i = 0; i < n; ++i) V.add_to(i, target, c * V(i, source));
    for (std::size_t j = 0; j < n; ++j) Vi.add_to(source, j, -c * Vi(target, j));
  }

  // cols (a, b) <- (s col_a + t col_b, u col_a + v col_b)
  void combine_cols(std::size_t a, std::size_t b, const Gcdex& g) {
    auto mix = [&](Matrix& M, std::size_t height) {
      for (std::size_t i = 0; i < height; ++i) {
        Scalar x = M(i, a), y = M(i, b);
        M.set(i, a, g.s * x + g.t * y);
        M.set(i, b, g.u * x + g.v * y);
      }
    };
    mix(S, m);
    mix(V, n);
    Scalar det_inv = R.inverse(R.reduce(g.s * g.v - g.t * g.u));
    for (std::size_t j = 0; j < n; ++j) {
      Scalar x = Vi(a, j), y = Vi(b, j);
      Vi.set(a, j, det_inv * (g.v * x - g.u * y));
      Vi.set(b, j, det_inv * (-g.t * x + g.s * y));
    }
  }

  static void swap_entries(Matrix& M, std::size_t i1, std::size_t j1, std::size_t i2,
                           std::size_t j2) {
    Scalar tmp = M(i1, j1);
    M.set(i1, j1, M(i2, j2));
    M.set(i2, j2, tmp);
  }

  const Ring R;
  const std::size_t m, n;
  Matrix S, U, Ui, V, Vi;
};

Unsolvability obstruction_from_row(const SmithDecomposition& d, std::size_t row,
                                   const Scalar& modulus) {
  return Unsolvability{d.U.row(row), modulus};
}

SolveOutcome solve_with(const SmithDecomposition& d, const Matrix& a, const Matrix& b) {
  const Ring& R = a.ring();
  Matrix c = d.U * b;
  std::size_t m = a.rows(), n = a.cols(), k = std::min(m, n);
  Matrix y(R, n, 1);
  for (std::size_t i = 0; i < m; ++i) {
    const Scalar& ci = c(i, 0);
    if (i < k && !R.is_zero(d.S(i, i))) {
      const Scalar& di = d.S(i, i);
      if (!R.divides(di, ci)) return {std::nullopt, obstruction_from_row(d, i, di)};
      y.set(i, 0, R.exact_div(ci, di));
    } else if (!R.is_zero(ci)) {
      return {std::nullopt, obstruction_from_row(d, i, R.zero())};
    }
  }
  return {d.V * y, std::nullopt};
}

void require_rows(const Matrix& a, const Matrix& b) {
  if (a.ring() != b.ring()) throw DimensionMismatch("solve: different rings");
  if (a.rows() != b.rows())
    throw DimensionMismatch("solve: A has " + std::to_string(a.rows()) + " rows, b has " +
                            std::to_string(b.rows()));
}

}  // namespace

std::vector<Scalar> SmithDecomposition::diagonal() const {
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) out.push_back(S(i, i));
  return out;
}

SmithDecomposition snf(const Matrix& a) { return SmithEngine(a).run(); }

bool Unsolvability::verify(const Matrix& a, const Matrix& b) const {
  const Ring& R = a.ring();
  if (witness.cols() != a.rows() || b.cols() != 1) return false;
  Matrix wa = witness * a;
  for (const auto& e : wa.entries())
    if (!R.divides(modulus, e)) return false;
  return !R.divides(modulus, (witness * b)(0, 0));
}

SolveOutcome solve_certified(const Matrix& a, const Matrix& b) {
  require_rows(a, b);
  if (b.cols() != 1) throw DimensionMismatch("solve: b must be a single column");
  return solve_with(snf(a), a, b);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  return solve_certified(a, b).solution;
}

std::optional<Matrix> solve_columns(const Matrix& a, const Matrix& b) {
  require_rows(a, b);
  Matrix x(a.ring(), a.cols(), b.cols());
  if (b.cols() == 0) return x;
  SmithDecomposition d = snf(a);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto out = solve_with(d, a, b.col(j));
    if (!out.solution) return std::nullopt;
    x.paste(0, j, *out.solution);
  }
  return x;
}

Matrix kernel_basis(const Matrix& a) {
  const Ring& R = a.ring();
  SmithDecomposition d = snf(a);
  std::size_t n = a.cols(), k = std::min(a.rows(), a.cols());
  std::vector<Matrix> columns;
  for (std::size_t i = 0; i < n; ++i) {
    Scalar scale = R.one();
    if (i < k && !R.is_zero(d.S(i, i))) scale = R.annihilator(d.S(i, i));
    if (R.is_zero(scale)) continue;
    Matrix c = d.V.col(i).scaled(scale);
    if (!c.is_zero()) columns.push_back(std::move(c));
  }
  Matrix out(R, n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) out.paste(0, j, columns[j]);
  return out;
}

bool in_column_span(const Matrix& a, const Matrix& b) {
  return solve_columns(a, b).has_value();
}

}  // namespace perfacto

#pragma once

// Brute-force reference implementations used to cross-check the kernel on
// finite rings. Everything here enumerates; nothing calls the Smith engine.

#include <functional>
#include <vector>

#include "perfacto/matrix.hpp"

namespace oracle {

using perfacto::Matrix;
using perfacto::Ring;
using perfacto::Scalar;

inline long ring_size(const Ring& R) { return R.cardinality().get_si(); }

/// Calls `visit` on every rows x cols matrix with entries in [0, |R|); stops
/// early when visit returns false. Returns false iff stopped early.
inline bool for_each_matrix(const Ring& R, std::size_t rows, std::size_t cols,
                            const std::function<bool(const Matrix&)>& visit) {
  const long q = ring_size(R);
  const std::size_t n = rows * cols;
  std::vector<long> digits(n, 0);
  Matrix m(R, rows, cols);
  for (;;) {
    for (std::size_t k = 0; k < n; ++k) m.set(k / cols, k % cols, Scalar(digits[k]));
    if (!visit(m)) return false;
    std::size_t k = 0;
    while (k < n && ++digits[k] == q) digits[k++] = 0;
    if (k == n) return true;
  }
}

inline std::vector<Matrix> all_vectors(const Ring& R, std::size_t n) {
  std::vector<Matrix> out;
  for_each_matrix(R, n, 1, [&](const Matrix& v) {
    out.push_back(v);
    return true;
  });
  return out;
}

inline bool brute_solvable(const Matrix& a, const Matrix& b) {
  bool found = false;
  for_each_matrix(a.ring(), a.cols(), 1, [&](const Matrix& x) {
    found = (a * x == b);
    return !found;
  });
  return found;
}

/// Encodes a vector with entries in [0, q) as an integer.
inline long encode(const Matrix& v, long q) {
  long code = 0;
  for (auto it = v.entries().rbegin(); it != v.entries().rend(); ++it)
    code = code * q + it->get_num().get_si();
  return code;
}

inline std::vector<bool> brute_kernel(const Matrix& a) {
  const long q = ring_size(a.ring());
  long total = 1;
  for (std::size_t i = 0; i < a.cols(); ++i) total *= q;
  std::vector<bool> in(total, false);
  for_each_matrix(a.ring(), a.cols(), 1, [&](const Matrix& x) {
    if ((a * x).is_zero()) in[encode(x, q)] = true;
    return true;
  });
  return in;
}

/// Ring span of the columns of `gens` as a membership table over R^n.
inline std::vector<bool> column_span(const Matrix& gens) {
  const Ring& R = gens.ring();
  const long q = ring_size(R);
  long total = 1;
  for (std::size_t i = 0; i < gens.rows(); ++i) total *= q;
  std::vector<bool> in(total, false);
  for_each_matrix(R, gens.cols(), 1, [&](const Matrix& c) {
    in[encode(gens * c, q)] = true;
    return true;
  });
  return in;
}

}  // namespace oracle

#include "perfacto/complex.hpp"

namespace oracle {

/// |H_v(c)| by counting cycles and boundaries in R^{g_v}.
inline long brute_homology_order(const perfacto::ChainComplex& c, int v) {
  const auto& m = c.component(v);
  const Ring& R = c.ring();
  const long q = ring_size(R);
  if (m.generators() == 0) return 1;
  Matrix d = c.differential(v).action();
  const auto& below = c.component(v - 1);
  std::vector<bool> below_rel;
  if (below.relations().cols() > 0) below_rel = column_span(below.relations());
  long cycles = 0;
  for_each_matrix(R, m.generators(), 1, [&](const Matrix& x) {
    Matrix y = d * x;
    cycles += y.is_zero() || (!below_rel.empty() && below_rel[encode(y, q)]);
    return true;
  });
  Matrix gens = perfacto::hstack(c.differential(v + 1).action(), m.relations());
  long boundaries = 0;
  if (gens.cols() == 0) {
    boundaries = 1;
  } else {
    for (bool b : column_span(gens)) boundaries += b;
  }
  return cycles / boundaries;
}

}  // namespace oracle

namespace oracle {

/// Membership table for the relation span of a module (all-false except the
/// zero vector when there are no relations).
inline std::vector<bool> relation_span(const perfacto::PresentedModule& m) {
  if (m.relations().cols() > 0) return column_span(m.relations());
  long total = 1;
  for (std::size_t i = 0; i < m.generators(); ++i) total *= ring_size(m.ring());
  std::vector<bool> in(total, false);
  in[0] = true;
  return in;
}

/// One canonical column vector per element of the module.
inline std::vector<Matrix> element_representatives(const perfacto::PresentedModule& m) {
  const Ring& R = m.ring();
  const long q = ring_size(R);
  auto span = relation_span(m);
  auto vectors = all_vectors(R, m.generators());
  std::vector<bool> taken(vectors.size(), false);
  std::vector<Matrix> reps;
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    if (taken[encode(vectors[a], q)]) continue;
    reps.push_back(vectors[a]);
    for (const auto& s : vectors)
      if (span[encode(s, q)]) taken[encode(vectors[a] + s, q)] = true;
  }
  return reps;
}

/// Product over degrees of |N_v|^{g(M_v)}: the unpruned search size.
inline double chain_map_search_size(const perfacto::ChainComplex& m,
                                    const perfacto::ChainComplex& n) {
  double size = 1;
  for (int v = m.lo(); v <= m.hi(); ++v) {
    double reps = static_cast<double>(element_representatives(n.component(v)).size());
    for (std::size_t j = 0; j < m.component(v).generators(); ++j) size *= reps;
  }
  return size;
}

/// Visits every chain map M -> N exactly once (as action matrices on the
/// canonical representatives), by backtracking from the lowest degree up.
inline void enumerate_chain_maps(const perfacto::ChainComplex& m, const perfacto::ChainComplex& n,
                                 const std::function<void(const std::map<int, Matrix>&)>& visit) {
  const Ring& R = m.ring();
  const long q = ring_size(R);
  int lo = m.lo(), hi = m.hi();
  std::map<int, Matrix> current;
  // per-degree tables, computed once rather than once per branch
  std::map<int, std::vector<Matrix>> reps_at;
  std::map<int, std::vector<bool>> span_at;
  for (int v = lo - 1; v <= hi; ++v) {
    if (v >= lo) reps_at.emplace(v, element_representatives(n.component(v)));
    span_at.emplace(v, relation_span(n.component(v)));
  }
  std::function<void(int)> step = [&](int v) {
    if (v > hi) {
      // top square: d^N_{hi+1} f_{hi+1} = 0 = f_hi d^M_{hi+1}, nothing to check
      visit(current);
      return;
    }
    const auto& src = m.component(v);
    const auto& tgt = n.component(v);
    const auto& reps = reps_at.at(v);
    const auto& tgt_span = span_at.at(v);
    const auto& below_span = span_at.at(v - 1);
    const std::size_t g = src.generators();
    std::vector<std::size_t> choice(g, 0);
    for (;;) {
      Matrix f(R, tgt.generators(), g);
      for (std::size_t j = 0; j < g; ++j) f.paste(0, j, reps[choice[j]]);
      bool ok = true;
      Matrix image = f * src.relations();
      for (std::size_t c = 0; c < image.cols() && ok; ++c) ok = tgt_span[encode(image.col(c), q)];
      if (ok) {
        Matrix lhs = n.differential(v).action() * f;
        Matrix rhs = current.count(v - 1)
                         ? current.at(v - 1) * m.differential(v).action()
                         : Matrix(R, lhs.rows(), lhs.cols());
        Matrix diff = lhs - rhs;
        for (std::size_t c = 0; c < diff.cols() && ok; ++c)
          ok = below_span[encode(diff.col(c), q)];
      }
      if (ok) {
        current.insert_or_assign(v, f);
        step(v + 1);
        current.erase(v);
      }
      std::size_t k = 0;
      while (k < g && ++choice[k] == reps.size()) choice[k++] = 0;
      if (k == g) break;
    }
  };
  if (lo > hi) {
    visit(current);
    return;
  }
  step(lo);
}

inline long count_chain_maps(const perfacto::ChainComplex& m, const perfacto::ChainComplex& n) {
  long count = 0;
  enumerate_chain_maps(m, n, [&](const std::map<int, Matrix>&) { ++count; });
  return count;
}

/// Every element of a module in invariant-factor form x = sum c_i e_i with
/// 0 <= c_i < |R/(d_i)|, as coordinate columns.
inline std::vector<Matrix> invariant_form_elements(const perfacto::PresentedModule& m) {
  const Ring& R = m.ring();
  auto factors = m.invariant_factors();
  std::vector<long> orders;
  for (const auto& d : factors) orders.push_back(R.cyclic_order(d).get_si());
  std::vector<Matrix> out;
  std::vector<long> digits(orders.size(), 0);
  for (;;) {
    Matrix x(R, orders.size(), 1);
    for (std::size_t i = 0; i < orders.size(); ++i) x.set(i, 0, Scalar(digits[i]));
    out.push_back(x);
    std::size_t k = 0;
    while (k < orders.size() && ++digits[k] == orders[k]) digits[k++] = 0;
    if (k == orders.size()) break;
  }
  return out;
}

}  // namespace oracle

namespace oracle {

/// Visits every homomorphism src -> tgt once (canonical representative
/// columns); stops early when visit returns false.
inline bool for_each_hom(const perfacto::PresentedModule& src, const perfacto::PresentedModule& tgt,
                         const std::function<bool(const Matrix&)>& visit) {
  const Ring& R = src.ring();
  const long q = ring_size(R);
  auto reps = element_representatives(tgt);
  auto span = relation_span(tgt);
  const std::size_t g = src.generators();
  std::vector<std::size_t> choice(g, 0);
  for (;;) {
    Matrix f(R, tgt.generators(), g);
    for (std::size_t j = 0; j < g; ++j) f.paste(0, j, reps[choice[j]]);
    Matrix image = f * src.relations();
    bool ok = true;
    for (std::size_t c = 0; c < image.cols() && ok; ++c) ok = span[encode(image.col(c), q)];
    if (ok && !visit(f)) return false;
    std::size_t k = 0;
    while (k < g && ++choice[k] == reps.size()) choice[k++] = 0;
    if (k == g) return true;
  }
}

/// Contractible means split (some degree-one sigma has d = d sigma d) and
/// acyclic. The split condition in degree v only involves sigma_{v-1}, so
/// each degree is searched on its own; acyclicity is counted directly.
inline bool brute_contractible(const perfacto::ChainComplex& c) {
  const long q = ring_size(c.ring());
  for (int v = c.lo(); v <= c.hi(); ++v)
    if (brute_homology_order(c, v) != 1) return false;
  for (int v = c.lo() + 1; v <= c.hi(); ++v) {
    const auto& below = c.component(v - 1);
    Matrix d = c.differential(v).action();
    auto span = relation_span(below);
    bool found = false;
    for_each_hom(below, c.component(v), [&](const Matrix& s) {
      Matrix diff = d * s * d - d;
      bool ok = true;
      for (std::size_t j = 0; j < diff.cols() && ok; ++j) ok = span[encode(diff.col(j), q)];
      found = ok;
      return !found;
    });
    if (!found) return false;
  }
  return true;
}

}  // namespace oracle

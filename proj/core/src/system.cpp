#include "perfacto/system.hpp"

#include "perfacto/errors.hpp"

namespace perfacto {

std::size_t MorphismSystem::add_unknown(const PresentedModule& source,
                                        const PresentedModule& target) {
  if (source.ring() != ring_ || target.ring() != ring_)
    throw DimensionMismatch("MorphismSystem: unknown over a different ring");
  unknowns_.push_back({source, target});
  return unknowns_.size() - 1;
}

void MorphismSystem::add_equation(const PresentedModule& modulo, std::vector<Term> terms,
                                  Matrix rhs) {
  if (rhs.rows() != modulo.generators())
    throw DimensionMismatch("MorphismSystem: rhs rows must match the modulo module");
  for (const auto& t : terms) {
    const auto& u = unknowns_.at(t.unknown);
    if (t.left.rows() != rhs.rows() || t.left.cols() != u.target.generators() ||
        t.right.rows() != u.source.generators() || t.right.cols() != rhs.cols())
      throw DimensionMismatch("MorphismSystem: term shape does not match equation");
  }
  equations_.push_back({modulo, std::move(terms), std::move(rhs)});
}

std::pair<Matrix, Matrix> MorphismSystem::flatten() const {
  // variable layout: [X_0 .. X_k | validity slacks | equation slacks]
  std::vector<std::size_t> var_offset;
  std::size_t vars = 0;
  for (const auto& u : unknowns_) {
    var_offset.push_back(vars);
    vars += u.target.generators() * u.source.generators();
  }
  std::vector<std::size_t> valid_slack;
  for (const auto& u : unknowns_) {
    valid_slack.push_back(vars);
    vars += u.target.relations().cols() * u.source.relations().cols();
  }
  std::vector<std::size_t> eq_slack;
  for (const auto& e : equations_) {
    eq_slack.push_back(vars);
    vars += e.modulo.relations().cols() * e.rhs.cols();
  }

  std::size_t rows = 0;
  for (const auto& u : unknowns_) rows += u.target.generators() * u.source.relations().cols();
  for (const auto& e : equations_) rows += e.rhs.rows() * e.rhs.cols();

  Matrix a(ring_, rows, vars);
  Matrix b(ring_, rows, 1);

  auto add_block = [&](std::size_t r0, std::size_t c0, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!ring_.is_zero(m(i, j))) a.add_to(r0 + i, c0 + j, m(i, j));
  };

  std::size_t row = 0;
  for (std::size_t k = 0; k < unknowns_.size(); ++k) {
    const auto& u = unknowns_[k];
    const Matrix& rel_s = u.source.relations();
    const Matrix& rel_t = u.target.relations();
    std::size_t q = rel_s.cols();
    if (u.target.generators() * q == 0) continue;
    // X * rel_s - rel_t * Y == 0
    add_block(row, var_offset[k], kron(Matrix::identity(ring_, u.target.generators()), rel_s.transpose()));
    add_block(row, valid_slack[k], -kron(rel_t, Matrix::identity(ring_, q)));
    row += u.target.generators() * q;
  }
  for (std::size_t e = 0; e < equations_.size(); ++e) {
    const auto& eq = equations_[e];
    std::size_t q = eq.rhs.cols();
    for (const auto& t : eq.terms) add_block(row, var_offset[t.unknown], kron(t.left, t.right.transpose()));
    add_block(row, eq_slack[e], -kron(eq.modulo.relations(), Matrix::identity(ring_, q)));
    b.paste(row, 0, eq.rhs.vec());
    row += eq.rhs.rows() * q;
  }
  return {a, b};
}

MorphismSystem::Result MorphismSystem::solve() const {
  auto [a, b] = flatten();
  SolveOutcome out = solve_certified(a, b);
  if (!out.solution) return {std::nullopt, out.obstruction};
  std::vector<Matrix> xs;
  std::size_t offset = 0;
  for (const auto& u : unknowns_) {
    std::size_t r = u.target.generators(), c = u.source.generators();
    xs.push_back(out.solution->block(offset, 0, r * c, 1).reshaped(r, c));
    offset += r * c;
  }
  return {std::move(xs), std::nullopt};
}

std::vector<std::vector<Matrix>> MorphismSystem::homogeneous_generators() const {
  auto [a, b] = flatten();
  (void)b;
  Matrix k = kernel_basis(a);
  std::vector<std::vector<Matrix>> out;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    std::vector<Matrix> xs;
    std::size_t offset = 0;
    bool nonzero = false;
    for (const auto& u : unknowns_) {
      std::size_t r = u.target.generators(), c = u.source.generators();
      xs.push_back(k.block(offset, j, r * c, 1).reshaped(r, c));
      nonzero = nonzero || !xs.back().is_zero();
      offset += r * c;
    }
    if (nonzero) out.push_back(std::move(xs));
  }
  return out;
}

}  // namespace perfacto

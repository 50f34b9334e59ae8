#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "perfacto/errors.hpp"
#include "perfacto/linalg.hpp"

using namespace perfacto;

namespace {

Ring Z() { return Ring::integers(); }

bool is_unimodular(const Matrix& m, const Matrix& inverse) {
  return m * inverse == Matrix::identity(m.ring(), m.rows()) &&
         inverse * m == Matrix::identity(m.ring(), m.rows());
}

void check_smith(const Matrix& a) {
  const Ring& R = a.ring();
  SmithDecomposition d = snf(a);
  CHECK(d.U * a * d.V == d.S);
  CHECK(is_unimodular(d.U, d.U_inv));
  CHECK(is_unimodular(d.V, d.V_inv));
  for (std::size_t i = 0; i < d.S.rows(); ++i)
    for (std::size_t j = 0; j < d.S.cols(); ++j)
      if (i != j) CHECK(R.is_zero(d.S(i, j)));
  auto diag = d.diagonal();
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) CHECK(R.divides(diag[i], diag[i + 1]));
}

}  // namespace

TEST_CASE("ring construction and canonical forms") {
  CHECK_THROWS_AS(Ring::integers_mod(1), InvalidRing);
  CHECK_THROWS_AS(Ring::prime_field(6), InvalidRing);
  Ring z6 = Ring::integers_mod(6);
  CHECK(z6.reduce(Scalar(-1)) == 5);
  CHECK(z6.name() == "Z/6");
  CHECK(Ring::rationals().reduce(Scalar(2, 4)) == Scalar(1, 2));
  CHECK(!z6.is_field());
  CHECK(Ring::integers_mod(5).is_field());
  CHECK(z6.annihilator(Scalar(2)) == 3);
  CHECK(z6.normalize(Scalar(4)).first == 2);
}

TEST_CASE("snf examples") {
  SUBCASE("zero 1x1") {
    auto d = snf(Matrix(Z(), 1, 1));
    CHECK(d.S == Matrix(Z(), 1, 1));
    CHECK(d.U == Matrix::identity(Z(), 1));
    CHECK(d.V == Matrix::identity(Z(), 1));
  }
  SUBCASE("identity") {
    auto d = snf(Matrix::identity(Z(), 3));
    CHECK(d.S == Matrix::identity(Z(), 3));
  }
  SUBCASE("diag(2, 3) becomes diag(1, 6)") {
    Matrix a = Matrix::from_rows(Z(), {{2, 0}, {0, 3}});
    auto d = snf(a);
    CHECK(d.S == Matrix::from_rows(Z(), {{1, 0}, {0, 6}}));
    check_smith(a);
    // determinants of 2x2 unimodular matrices are +-1
    auto det = [](const Matrix& m) -> Scalar { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); };
    CHECK(abs(det(d.U)) == 1);
    CHECK(abs(det(d.V)) == 1);
  }
  SUBCASE("fields have 0/1 diagonals") {
    Matrix a = Matrix::from_rows(Ring::rationals(), {{2, 4}, {1, 2}, {3, 7}});
    auto d = snf(a);
    CHECK(d.diagonal() == std::vector<Scalar>{1, 1});
    check_smith(a);
  }
}

TEST_CASE("snf property: random integer matrices up to 6x6") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t m = dim(rng), n = dim(rng);
    Matrix a(Z(), m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a.set(i, j, Scalar(entry(rng)));
    check_smith(a);
  }
}

TEST_CASE("snf property: random matrices over Z/n") {
  std::mt19937_64 rng(23);
  for (long n : {2L, 4L, 6L, 12L, 30L}) {
    Ring R = Ring::integers_mod(n);
    std::uniform_int_distribution<int> dim(1, 5), entry(0, static_cast<int>(n - 1));
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t m = dim(rng), k = dim(rng);
      Matrix a(R, m, k);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j) a.set(i, j, Scalar(entry(rng)));
      check_smith(a);
    }
  }
}

TEST_CASE("solve examples") {
  CHECK(*solve(Matrix::from_rows(Z(), {{2}}), Matrix::from_rows(Z(), {{4}})) ==
        Matrix::from_rows(Z(), {{2}}));
  CHECK(!solve(Matrix::from_rows(Z(), {{2}}), Matrix::from_rows(Z(), {{3}})));
  Ring z6 = Ring::integers_mod(6);
  Matrix a = Matrix::from_rows(z6, {{3}}), b = Matrix::from_rows(z6, {{1}});
  auto out = solve_certified(a, b);
  CHECK(!out.solution);
  CHECK(!oracle::brute_solvable(a, b));
  REQUIRE(out.obstruction);
  CHECK(out.obstruction->verify(a, b));
  CHECK_THROWS_AS(solve(a, Matrix(z6, 2, 1)), DimensionMismatch);
}

TEST_CASE("solve property: agreement with brute force over Z/2 and Z/6") {
  std::mt19937_64 rng(5);
  for (long n : {2L, 6L}) {
    Ring R = Ring::integers_mod(n);
    std::uniform_int_distribution<int> dim(1, 3), entry(0, static_cast<int>(n - 1));
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t m = dim(rng), k = dim(rng);
      Matrix a(R, m, k), b(R, m, 1);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) a.set(i, j, Scalar(entry(rng)));
        b.set(i, 0, Scalar(entry(rng)));
      }
      auto out = solve_certified(a, b);
      bool expected = oracle::brute_solvable(a, b);
      CHECK(out.solution.has_value() == expected);
      if (out.solution) CHECK(a * *out.solution == b);
      if (out.obstruction) CHECK(out.obstruction->verify(a, b));
    }
  }
}

TEST_CASE("kernel_basis examples") {
  CHECK(kernel_basis(Matrix::identity(Ring::rationals(), 3)).cols() == 0);
  CHECK(kernel_basis(Matrix(Z(), 1, 1)) == Matrix::from_rows(Z(), {{1}}));
  Ring z6 = Ring::integers_mod(6);
  Matrix k = kernel_basis(Matrix::from_rows(z6, {{2}}));
  CHECK(k == Matrix::from_rows(z6, {{3}}));
  CHECK(oracle::column_span(k) == oracle::brute_kernel(Matrix::from_rows(z6, {{2}})));
}

TEST_CASE("kernel_basis property: span equals brute-force kernel") {
  std::mt19937_64 rng(11);
  for (long n : {2L, 4L, 6L}) {
    Ring R = Ring::integers_mod(n);
    std::uniform_int_distribution<int> dim(1, 3), entry(0, static_cast<int>(n - 1));
    for (int trial = 0; trial < 150; ++trial) {
      std::size_t m = dim(rng), k = dim(rng);
      Matrix a(R, m, k);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j) a.set(i, j, Scalar(entry(rng)));
      Matrix basis = kernel_basis(a);
      CHECK((a * basis).is_zero());
      CHECK(oracle::column_span(basis) == oracle::brute_kernel(a));
    }
  }
}

TEST_CASE("integer kernels are saturated") {
  // A x = 0 over Z for A = [2 4]: kernel generated by (-2, 1)
  Matrix a = Matrix::from_rows(Z(), {{2, 4}});
  Matrix k = kernel_basis(a);
  REQUIRE(k.cols() == 1);
  CHECK((a * k).is_zero());
  CHECK(abs(k(1, 0)) == 1);
}

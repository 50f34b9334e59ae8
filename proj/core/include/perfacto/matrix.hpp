#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "perfacto/ring.hpp"

namespace perfacto {

/// Dense matrix over a Ring, row-major, entries kept in canonical form.
class Matrix {
 public:
  Matrix(Ring ring, std::size_t rows, std::size_t cols);
  Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(const Ring& ring, std::size_t n);
  static Matrix from_rows(const Ring& ring, const std::vector<std::vector<long>>& rows);
  static Matrix column(const Ring& ring, std::span<const Scalar> entries);
  /// n x 1 with a single one at `index`.
  static Matrix unit_column(const Ring& ring, std::size_t n, std::size_t index);
  static Matrix diagonal(const Ring& ring, std::span<const Scalar> entries);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Scalar& value);
  void add_to(std::size_t i, std::size_t j, const Scalar& value);
  const std::vector<Scalar>& entries() const { return data_; }

  bool is_zero() const;
  Matrix transpose() const;
  Matrix col(std::size_t j) const;
  Matrix row(std::size_t i) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix select_rows(std::span<const std::size_t> indices) const;
  Matrix select_cols(std::span<const std::size_t> indices) const;
  /// Writes `m` into this matrix with its top-left corner at (r0, c0).
  void paste(std::size_t r0, std::size_t c0, const Matrix& m);
  Matrix scaled(const Scalar& c) const;
  /// Row-major flattening into a column vector.
  Matrix vec() const;
  Matrix reshaped(std::size_t rows, std::size_t cols) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);
/// Kronecker product; with row-major vec, vec(A X B) = kron(A, B^T) vec(X).
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace perfacto

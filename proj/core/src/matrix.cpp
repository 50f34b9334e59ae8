#include "perfacto/matrix.hpp"

#include <sstream>

#include "perfacto/errors.hpp"

namespace perfacto {

namespace {

void require_same_ring(const Matrix& a, const Matrix& b, const char* op) {
  if (a.ring() != b.ring())
    throw DimensionMismatch(std::string(op) + ": matrices over different rings");
}

}  // namespace

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw DimensionMismatch("entry count does not match shape");
  for (auto& e : data_) e = ring_.reduce(e);
}

Matrix Matrix::identity(const Ring& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = ring.one();
  return m;
}

Matrix Matrix::from_rows(const Ring& ring, const std::vector<std::vector<long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Scalar(rows[i][j]));
  }
  return m;
}

Matrix Matrix::column(const Ring& ring, std::span<const Scalar> entries) {
  return Matrix(ring, entries.size(), 1, std::vector<Scalar>(entries.begin(), entries.end()));
}

Matrix Matrix::unit_column(const Ring& ring, std::size_t n, std::size_t index) {
  Matrix m(ring, n, 1);
  m.set(index, 0, ring.one());
  return m;
}

Matrix Matrix::diagonal(const Ring& ring, std::span<const Scalar> entries) {
  Matrix m(ring, entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, i, entries[i]);
  return m;
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& value) {
  data_[i * cols_ + j] = ring_.reduce(value);
}

void Matrix::add_to(std::size_t i, std::size_t j, const Scalar& value) {
  auto& e = data_[i * cols_ + j];
  e = ring_.add(e, value);
}

bool Matrix::is_zero() const {
  for (const auto& e : data_)
    if (sgn(e) != 0) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

Matrix Matrix::col(std::size_t j) const { return block(0, j, rows_, 1); }
Matrix Matrix::row(std::size_t i) const { return block(i, 0, 1, cols_); }

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
  Matrix b(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
  return b;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix m(ring_, indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.data_[i * cols_ + j] = data_[indices[i] * cols_ + j];
  return m;
}

Matrix Matrix::select_cols(std::span<const std::size_t> indices) const {
  Matrix m(ring_, rows_, indices.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < indices.size(); ++j)
      m.data_[i * indices.size() + j] = data_[i * cols_ + indices[j]];
  return m;
}

void Matrix::paste(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw DimensionMismatch("paste out of range");
  for (std::size_t i = 0; i < m.rows_; ++i)
    for (std::size_t j = 0; j < m.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = m.data_[i * m.cols_ + j];
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix m = *this;
  for (auto& e : m.data_) e = ring_.mul(e, c);
  return m;
}

Matrix Matrix::vec() const { return Matrix(ring_, rows_ * cols_, 1, data_); }

Matrix Matrix::reshaped(std::size_t rows, std::size_t cols) const {
  if (rows * cols != data_.size()) throw DimensionMismatch("reshape changes entry count");
  return Matrix(ring_, rows, cols, data_);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "multiply");
  if (a.cols_ != b.rows_)
    throw DimensionMismatch("multiply: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                            " by " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  Matrix c(a.ring_, a.rows_, b.cols_);
  Scalar acc;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a.data_[i * a.cols_ + k];
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b.data_[k * b.cols_ + j];
        if (sgn(bkj) == 0) continue;
        c.data_[i * b.cols_ + j] += aik * bkj;
      }
    }
  }
  for (auto& e : c.data_) e = c.ring_.reduce(e);
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "add");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("add: shape mismatch");
  Matrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = c.ring_.add(c.data_[k], b.data_[k]);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "subtract");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("subtract: shape mismatch");
  Matrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = c.ring_.sub(c.data_[k], b.data_[k]);
  return c;
}

Matrix operator-(const Matrix& a) {
  Matrix c = a;
  for (auto& e : c.data_) e = c.ring_.neg(e);
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << data_[i * cols_ + j].get_str();
  }
  out << "]";
  return out.str();
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "hstack");
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row mismatch");
  Matrix m(a.ring(), a.rows(), a.cols() + b.cols());
  m.paste(0, 0, a);
  m.paste(0, a.cols(), b);
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "vstack");
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column mismatch");
  Matrix m(a.ring(), a.rows() + b.rows(), a.cols());
  m.paste(0, 0, a);
  m.paste(a.rows(), 0, b);
  return m;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "direct_sum");
  Matrix m(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  m.paste(0, 0, a);
  m.paste(a.rows(), a.cols(), b);
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "kron");
  Matrix m(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& aij = a(i, j);
      if (sgn(aij) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m.set(i * b.rows() + k, j * b.cols() + l, aij * b(k, l));
    }
  return m;
}

}  // namespace perfacto

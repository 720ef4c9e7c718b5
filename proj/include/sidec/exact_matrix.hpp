#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "sidec/gaussian_rational.hpp"

namespace sidec {

/// Dense row-major matrix of Gaussian rationals. A value type: copies are
/// deep and every arithmetic operation returns a new matrix.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::initializer_list<std::initializer_list<GaussianRational>> rows);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ExactMatrix diagonal(std::span<const GaussianRational> values);
  static ExactMatrix column(std::span<const GaussianRational> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const GaussianRational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  GaussianRational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::span<const GaussianRational> entries() const { return data_; }

  bool is_zero() const;
  bool is_upper_triangular() const;
  bool is_diagonal() const;
  GaussianRational trace() const;

  ExactMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const ExactMatrix& b);
  ExactMatrix transpose() const;

  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  ExactMatrix& operator*=(const GaussianRational& s);

  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator*(ExactMatrix a, const GaussianRational& s) { return a *= s; }
  friend ExactMatrix operator*(const GaussianRational& s, ExactMatrix a) { return a *= s; }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) = default;

  /// Multi-line debugging dump.
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> data_;
};

/// A·B − B·A.
ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b);

/// Block diagonal matrix with the given blocks in order.
ExactMatrix direct_sum(std::span<const ExactMatrix> blocks);

/// J_n(alpha): alpha on the diagonal, 1 on the superdiagonal.
ExactMatrix jordan_block(std::size_t n, const GaussianRational& alpha);

/// The n×n nilpotent shift raised to the given power.
ExactMatrix shift_power(std::size_t n, std::size_t power);

}  // namespace sidec

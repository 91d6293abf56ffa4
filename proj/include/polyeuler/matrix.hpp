// Copyright 2026 The polyeuler Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef POLYEULER_MATRIX_HPP_
#define POLYEULER_MATRIX_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polyeuler/rational.hpp"

namespace polyeuler {

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);
  /// Matrix whose columns are the given vectors (all of equal length).
  static Matrix from_columns(const std::vector<std::vector<Rational>>& cols,
                             std::size_t height);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::vector<Rational> column(std::size_t c) const;
  std::vector<Rational> row(std::size_t r) const;

  Matrix transpose() const;
  Rational trace() const;
  bool is_zero() const;
  bool is_symmetric() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Rational& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend std::vector<Rational> operator*(const Matrix& a,
                                         std::span<const Rational> x);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// A * this * A^T, the congruence used by every completely positive map.
  Matrix congruence(const Matrix& a) const;

  Matrix submatrix(std::span<const std::size_t> rows,
                   std::span<const std::size_t> cols) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);

/// Rank by fraction-free (Bareiss) elimination on integer-scaled rows.
std::size_t rank(const Matrix& m);

/// Indices of pivot columns of the echelon form (Bareiss, deterministic).
std::vector<std::size_t> pivot_columns(const Matrix& m);

/// Columns of m at its pivot positions: a basis of the column space.
Matrix column_basis(const Matrix& m);

/// Solves a * x = b for square nonsingular a; throws Error when singular.
Matrix solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);

/// Outcome of the exact positive semidefiniteness test.
struct PsdCertificate {
  bool psd = true;
  /// When !psd, a vector v with v^T A v < 0.
  std::vector<Rational> witness;
  /// v^T A v for the witness (negative when !psd).
  Rational witness_value;
};

/// Exact PSD test of a symmetric matrix by pivoted LDL^T.
PsdCertificate psd_test(const Matrix& a);

/// a <= b in the Loewner order, i.e. b - a is PSD.
bool loewner_leq(const Matrix& a, const Matrix& b);

Rational quadratic_form(const Matrix& a, std::span<const Rational> v);

}  // namespace polyeuler

#endif  // POLYEULER_MATRIX_HPP_

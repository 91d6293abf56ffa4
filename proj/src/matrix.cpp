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

#include "polyeuler/matrix.hpp"

#include <algorithm>
#include <utility>

namespace polyeuler {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<std::vector<Rational>>& cols,
                            std::size_t height) {
  Matrix m(height, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != height) throw Error("column length mismatch");
    for (std::size_t i = 0; i < height; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

std::vector<Rational> Matrix::column(std::size_t c) const {
  std::vector<Rational> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

std::vector<Rational> Matrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Rational Matrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Rational& x) { return sgn(x) == 0; });
}

bool Matrix::is_symmetric() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error("matrix dimension mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error("matrix dimension mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix dimension mismatch in *");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const Rational& x = a(i, l);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (sgn(b(l, j)) != 0) c(i, j) += x * b(l, j);
      }
    }
  }
  return c;
}

std::vector<Rational> operator*(const Matrix& a, std::span<const Rational> x) {
  if (a.cols_ != x.size()) throw Error("matrix-vector dimension mismatch");
  std::vector<Rational> y(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (sgn(a(i, j)) != 0 && sgn(x[j]) != 0) y[i] += a(i, j) * x[j];
  return y;
}

Matrix Matrix::congruence(const Matrix& a) const {
  return a * (*this) * a.transpose();
}

Matrix Matrix::submatrix(std::span<const std::size_t> rows,
                         std::span<const std::size_t> cols) const {
  Matrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      s(i, j) = (*this)(rows[i], cols[j]);
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    }
  return k;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

namespace {

using IntRows = std::vector<std::vector<Integer>>;

IntRows integer_scaled(const Matrix& m) {
  IntRows out(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j)
      out[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  return out;
}

// Fraction-free elimination; returns pivot columns. Every intermediate entry
// is a minor of the input, so the divisions by the previous pivot are exact.
std::vector<std::size_t> bareiss(IntRows& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.size();
  Integer prev = 1;
  std::size_t r = 0;
  Integer tmp;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        tmp = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<std::size_t> pivot_columns(const Matrix& m) {
  IntRows a = integer_scaled(m);
  return bareiss(a, m.cols());
}

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Eliminate along the shorter side.
  if (m.rows() < m.cols()) return pivot_columns(m.transpose()).size();
  return pivot_columns(m).size();
}

Matrix column_basis(const Matrix& m) {
  // Pivot columns of m are pivot rows of m^T's elimination, so work on m
  // directly with columns as the elimination order.
  std::vector<std::size_t> piv = pivot_columns(m);
  std::vector<std::size_t> all_rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) all_rows[i] = i;
  return m.submatrix(all_rows, piv);
}

Matrix solve(const Matrix& a, const Matrix& b) {
  if (!a.square() || a.rows() != b.rows())
    throw Error("solve: dimension mismatch");
  const std::size_t n = a.rows();
  Matrix l = a;
  Matrix r = b;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(l(p, c)) == 0) ++p;
    if (p == n) throw Error("solve: singular system");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(l(p, j), l(c, j));
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(p, j), r(c, j));
    }
    const Rational inv = 1 / l(c, c);
    for (std::size_t j = 0; j < n; ++j) l(c, j) *= inv;
    for (std::size_t j = 0; j < r.cols(); ++j) r(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(l(i, c)) == 0) continue;
      const Rational f = l(i, c);
      for (std::size_t j = 0; j < n; ++j) l(i, j) -= f * l(c, j);
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) -= f * r(c, j);
    }
  }
  return r;
}

Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

Rational quadratic_form(const Matrix& a, std::span<const Rational> v) {
  auto av = a * v;
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * av[i];
  return s;
}

PsdCertificate psd_test(const Matrix& a) {
  if (!a.is_symmetric()) throw Error("psd_test: matrix is not symmetric");
  const std::size_t n = a.rows();
  Matrix s = a;
  std::vector<bool> active(n, true);
  struct Step {
    std::size_t pivot;
    std::vector<std::pair<std::size_t, Rational>> coeffs;
  };
  std::vector<Step> steps;
  std::vector<Rational> y(n);
  bool found = false;

  while (!found) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n && !found; ++i) {
      if (!active[i]) continue;
      if (sgn(s(i, i)) < 0) {
        y[i] = 1;
        found = true;
      } else if (sgn(s(i, i)) > 0 && !pivot) {
        pivot = i;
      }
    }
    if (found) break;
    if (!pivot) {
      // Zero diagonal on the active block: any nonzero off-diagonal entry
      // makes the form indefinite.
      for (std::size_t i = 0; i < n && !found; ++i) {
        if (!active[i]) continue;
        for (std::size_t j = i + 1; j < n && !found; ++j) {
          if (!active[j] || sgn(s(i, j)) == 0) continue;
          y[i] = 1;
          y[j] = sgn(s(i, j)) > 0 ? -1 : 1;
          found = true;
        }
      }
      if (!found) return {};
      break;
    }
    const std::size_t p = *pivot;
    Step step{p, {}};
    for (std::size_t j = 0; j < n; ++j) {
      if (!active[j] || j == p || sgn(s(p, j)) == 0) continue;
      step.coeffs.emplace_back(j, s(p, j) / s(p, p));
    }
    for (const auto& [i, ci] : step.coeffs)
      for (std::size_t j = 0; j < n; ++j)
        if (active[j] && j != p && sgn(s(p, j)) != 0) s(i, j) -= ci * s(p, j);
    active[p] = false;
    steps.push_back(std::move(step));
  }

  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    Rational x = 0;
    for (const auto& [j, c] : it->coeffs) x -= c * y[j];
    y[it->pivot] = x;
  }
  PsdCertificate cert;
  cert.psd = false;
  cert.witness_value = quadratic_form(a, y);
  cert.witness = std::move(y);
  if (sgn(cert.witness_value) >= 0)
    throw Error("psd_test: internal error, witness is not negative");
  return cert;
}

bool loewner_leq(const Matrix& a, const Matrix& b) {
  return psd_test(b - a).psd;
}

}  // namespace polyeuler

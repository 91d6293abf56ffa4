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

#include "polyeuler/polyball.hpp"

#include <algorithm>
#include <sstream>

namespace polyeuler {

PolyballTuple::PolyballTuple(Shape shape, std::size_t dim,
                             std::vector<std::vector<Matrix>> ops,
                             std::optional<Matrix> metric)
    : shape_(std::move(shape)),
      dim_(dim),
      ops_(std::move(ops)),
      metric_(std::move(metric)) {
  if (ops_.size() != shape_.k())
    throw PreconditionError("tuple has " + std::to_string(ops_.size()) +
                            " factors but shape " + shape_.str());
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].size() != static_cast<std::size_t>(shape_.n(i)))
      throw PreconditionError("factor " + std::to_string(i) + " has " +
                              std::to_string(ops_[i].size()) +
                              " operators, expected " +
                              std::to_string(shape_.n(i)));
    for (const Matrix& m : ops_[i])
      if (m.rows() != dim_ || m.cols() != dim_)
        throw PreconditionError("operator size does not match dim " +
                                std::to_string(dim_));
  }
  if (metric_) {
    if (metric_->rows() != dim_ || metric_->cols() != dim_ ||
        !metric_->is_symmetric())
      throw PreconditionError("metric must be a symmetric dim x dim matrix");
    if (!psd_test(*metric_).psd || rank(*metric_) != dim_)
      throw PreconditionError("metric must be positive definite");
  }
  for (std::size_t i = 0; i < ops_.size(); ++i)
    for (std::size_t s = i + 1; s < ops_.size(); ++s)
      for (std::size_t j = 0; j < ops_[i].size(); ++j)
        for (std::size_t u = 0; u < ops_[s].size(); ++u)
          if (!(ops_[i][j] * ops_[s][u] == ops_[s][u] * ops_[i][j])) {
            std::ostringstream os;
            os << "cross-factor commutation fails: T_{" << i + 1 << ","
               << j + 1 << "} T_{" << s + 1 << "," << u + 1
               << "} != T_{" << s + 1 << "," << u + 1 << "} T_{" << i + 1
               << "," << j + 1 << "}";
            throw PreconditionError(os.str());
          }
}

Matrix PolyballTuple::metric() const {
  return metric_ ? *metric_ : Matrix::identity(dim_);
}

Matrix PolyballTuple::identity_kernel() const {
  return metric_ ? inverse(*metric_) : Matrix::identity(dim_);
}

Rational PolyballTuple::operator_trace(const Matrix& k) const {
  return metric_ ? (k * *metric_).trace() : k.trace();
}

// ---------------------------------------------------------------------------
// Completely positive maps

Matrix phi_apply(const PolyballTuple& t, std::size_t i, const Matrix& y) {
  if (i >= t.shape().k()) throw PreconditionError("factor index out of range");
  if (y.rows() != t.dim() || y.cols() != t.dim())
    throw PreconditionError("phi_apply: dimension mismatch");
  Matrix out(t.dim(), t.dim());
  for (const Matrix& op : t.ops()[i]) out += y.congruence(op);
  return out;
}

Matrix phi_power(const PolyballTuple& t, std::size_t i, int power,
                 const Matrix& y) {
  Matrix out = y;
  for (int p = 0; p < power; ++p) out = phi_apply(t, i, out);
  return out;
}

Matrix defect_map(const PolyballTuple& t, const std::vector<int>& p) {
  if (p.size() != t.shape().k())
    throw PreconditionError("defect_map: p has wrong length");
  Matrix y = t.identity_kernel();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 0 && p[i] != 1)
      throw PreconditionError("defect_map: p must be a 0/1 vector");
    if (p[i] == 1) y -= phi_apply(t, i, y);
  }
  return y;
}

DefectData defect_data(const PolyballTuple& t) {
  DefectData d;
  d.delta = defect_map(t, std::vector<int>(t.shape().k(), 1));
  d.delta_rank = rank(d.delta);
  d.defect_basis = column_basis(d.delta);
  return d;
}

PolyballMembership is_in_polyball(const PolyballTuple& t) {
  const std::size_t k = t.shape().k();
  PolyballMembership out;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = (mask >> i) & 1u;
    PsdCertificate cert = psd_test(defect_map(t, p));
    if (!cert.psd) {
      out.violating_p = p;
      out.witness = cert.witness;
      out.witness_value = cert.witness_value;
      return out;
    }
  }
  out.member = true;
  return out;
}

// ---------------------------------------------------------------------------
// Berezin Gram identities

namespace {

// T_{i,beta} for every word beta with |beta| <= max_len, in length-lex
// order. Built by appending letters: T_{i,beta j} = T_{i,beta} T_{i,j}.
std::vector<Matrix> word_products(const PolyballTuple& t, std::size_t i,
                                  int max_len) {
  std::vector<Matrix> out{Matrix::identity(t.dim())};
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t w = level_begin; w < level_end; ++w)
      for (const Matrix& op : t.ops()[i]) out.push_back(out[w] * op);
    level_begin = level_end;
  }
  return out;
}

}  // namespace

Matrix berezin_gram(const PolyballTuple& t, const MultiDegree& q) {
  const std::size_t k = t.shape().k();
  if (q.k() != k) throw PreconditionError("berezin_gram: q/shape mismatch");
  const Matrix delta = defect_map(t, std::vector<int>(k, 1));
  std::vector<std::vector<Matrix>> words(k);
  for (std::size_t i = 0; i < k; ++i) words[i] = word_products(t, i, q[i]);

  // Odometer over (beta_1, ..., beta_k).
  Matrix out(t.dim(), t.dim());
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    Matrix prod = Matrix::identity(t.dim());
    for (std::size_t i = 0; i < k; ++i) prod = prod * words[i][idx[i]];
    out += delta.congruence(prod);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] + 1 == words[i - 1].size()) {
      idx[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
    ++idx[i - 1];
  }
  return out;
}

Matrix phi_power_formula(const PolyballTuple& t, const MultiDegree& q) {
  if (q.k() != t.shape().k())
    throw PreconditionError("phi_power_formula: q/shape mismatch");
  Matrix y = t.identity_kernel();
  for (std::size_t i = 0; i < q.k(); ++i) y -= phi_power(t, i, q[i] + 1, y);
  return y;
}

Matrix telescoping_sum(const PolyballTuple& t, const MultiDegree& q) {
  if (q.k() != t.shape().k())
    throw PreconditionError("telescoping_sum: q/shape mismatch");
  const Matrix delta = defect_map(t, std::vector<int>(q.k(), 1));
  Matrix out(t.dim(), t.dim());
  for (const MultiDegree& s : box(q)) {
    Matrix y = delta;
    for (std::size_t i = 0; i < s.k(); ++i) y = phi_power(t, i, s[i], y);
    out += y;
  }
  return out;
}

std::size_t span_dim(const PolyballTuple& t, const Matrix& d,
                     const MultiDegree& q) {
  if (q.k() != t.shape().k())
    throw PreconditionError("span_dim: q/shape mismatch");
  if (d.rows() != t.dim()) throw PreconditionError("span_dim: D has wrong height");
  if (d.cols() == 0) return 0;
  Matrix span = column_basis(d);
  for (std::size_t i = 0; i < q.k(); ++i) {
    // Words of length <= q_i applied to the current span, one letter at a
    // time; only the newest layer needs to be extended.
    Matrix frontier = span;
    for (int len = 1; len <= q[i] && frontier.cols() > 0; ++len) {
      std::vector<std::vector<Rational>> cols;
      for (std::size_t c = 0; c < span.cols(); ++c) cols.push_back(span.column(c));
      const std::size_t before = cols.size();
      std::vector<std::vector<Rational>> next;
      for (const Matrix& op : t.ops()[i]) {
        Matrix image = op * frontier;
        for (std::size_t c = 0; c < image.cols(); ++c)
          next.push_back(image.column(c));
      }
      cols.insert(cols.end(), next.begin(), next.end());
      Matrix all = Matrix::from_columns(cols, t.dim());
      std::vector<std::size_t> pivots = pivot_columns(all);
      span = column_basis(all);
      // New frontier: pivots that came from the images.
      std::vector<std::vector<Rational>> fresh;
      for (std::size_t p : pivots)
        if (p >= before) fresh.push_back(all.column(p));
      frontier = Matrix::from_columns(fresh, t.dim());
    }
  }
  return span.cols();
}

PurityReport is_pure(const PolyballTuple& t, const Rational& tol,
                     int max_power) {
  if (max_power < 1) throw PreconditionError("is_pure: max_power must be >= 1");
  PurityReport out;
  out.decayed = true;
  for (std::size_t i = 0; i < t.shape().k(); ++i) {
    std::vector<Rational> traces;
    Matrix y = t.identity_kernel();
    for (int p = 1; p <= max_power; ++p) {
      y = phi_apply(t, i, y);
      traces.push_back(t.operator_trace(y));
    }
    if (traces.back() > tol) out.decayed = false;
    out.traces.push_back(std::move(traces));
  }
  out.status = out.decayed
                   ? "pure up to max_power " + std::to_string(max_power)
                   : "not decayed";
  return out;
}

// ---------------------------------------------------------------------------
// Constructions of new tuples

PolyballTuple ampliation(const std::vector<PolyballTuple>& xs) {
  if (xs.empty()) throw PreconditionError("ampliation: no tuples");
  if (xs.size() == 1) return xs.front();
  std::vector<int> n;
  std::size_t dim = 1;
  bool any_metric = false;
  for (const auto& x : xs) {
    n.insert(n.end(), x.shape().counts().begin(), x.shape().counts().end());
    dim *= x.dim();
    any_metric = any_metric || x.has_metric();
  }
  std::vector<std::vector<Matrix>> ops;
  for (std::size_t m = 0; m < xs.size(); ++m) {
    for (const auto& factor_ops : xs[m].ops()) {
      std::vector<Matrix> amplified;
      for (const Matrix& op : factor_ops) {
        Matrix acc = Matrix::identity(1);
        for (std::size_t l = 0; l < xs.size(); ++l)
          acc = kron(acc, l == m ? op : Matrix::identity(xs[l].dim()));
        amplified.push_back(std::move(acc));
      }
      ops.push_back(std::move(amplified));
    }
  }
  std::optional<Matrix> metric;
  if (any_metric) {
    Matrix g = Matrix::identity(1);
    for (const auto& x : xs) g = kron(g, x.metric());
    metric = std::move(g);
  }
  return PolyballTuple(Shape(std::move(n)), dim, std::move(ops),
                       std::move(metric));
}

PolyballTuple direct_sum(const PolyballTuple& a, const PolyballTuple& b) {
  if (!(a.shape() == b.shape()))
    throw PreconditionError("direct_sum: shape mismatch " + a.shape().str() +
                            " vs " + b.shape().str());
  std::vector<std::vector<Matrix>> ops(a.shape().k());
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = 0; j < a.ops()[i].size(); ++j)
      ops[i].push_back(block_diag(a.op(i, j), b.op(i, j)));
  std::optional<Matrix> metric;
  if (a.has_metric() || b.has_metric())
    metric = block_diag(a.metric(), b.metric());
  return PolyballTuple(a.shape(), a.dim() + b.dim(), std::move(ops),
                       std::move(metric));
}

namespace {

void check_basis(const PolyballTuple& t, const Matrix& basis) {
  if (basis.rows() != t.dim())
    throw PreconditionError("subspace basis has wrong height");
  if (basis.cols() == 0) throw PreconditionError("subspace basis is empty");
  if (rank(basis) != basis.cols())
    throw PreconditionError("subspace basis columns are dependent");
}

// Solves basis * c = target for c, or returns the first column of target
// outside the span.
std::optional<Matrix> coordinates_in(const Matrix& basis, const Matrix& target,
                                     std::vector<Rational>* witness) {
  const Matrix bt = basis.transpose();
  Matrix c = solve(bt * basis, bt * target);
  Matrix back = basis * c;
  for (std::size_t col = 0; col < target.cols(); ++col)
    for (std::size_t r = 0; r < target.rows(); ++r)
      if (back(r, col) != target(r, col)) {
        if (witness) *witness = target.column(col);
        return std::nullopt;
      }
  return c;
}

std::string vector_str(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

}  // namespace

PolyballTuple restrict_invariant(const PolyballTuple& t, const Matrix& basis) {
  check_basis(t, basis);
  std::vector<std::vector<Matrix>> ops(t.shape().k());
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = 0; j < t.ops()[i].size(); ++j) {
      std::vector<Rational> witness;
      auto c = coordinates_in(basis, t.op(i, j) * basis, &witness);
      if (!c)
        throw PreconditionError(
            "subspace is not invariant under T_{" + std::to_string(i + 1) +
            "," + std::to_string(j + 1) + "}: image " + vector_str(witness) +
            " leaves the span");
      ops[i].push_back(std::move(*c));
    }
  Matrix gram = basis.transpose() * t.metric() * basis;
  std::optional<Matrix> metric;
  if (!(gram == Matrix::identity(basis.cols()))) metric = std::move(gram);
  return PolyballTuple(t.shape(), basis.cols(), std::move(ops),
                       std::move(metric));
}

PolyballTuple compress_coinvariant(const PolyballTuple& t,
                                   const Matrix& basis) {
  check_basis(t, basis);
  const Matrix g = t.metric();
  const Matrix g_inv = t.identity_kernel();
  const Matrix gram = basis.transpose() * g * basis;
  const Matrix gram_inv = inverse(gram);
  std::vector<std::vector<Matrix>> ops(t.shape().k());
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = 0; j < t.ops()[i].size(); ++j) {
      // Co-invariance: the adjoint G^{-1} T^T G maps M into M.
      const Matrix adjoint = g_inv * t.op(i, j).transpose() * g;
      std::vector<Rational> witness;
      if (!coordinates_in(basis, adjoint * basis, &witness))
        throw PreconditionError(
            "subspace is not co-invariant under T_{" + std::to_string(i + 1) +
            "," + std::to_string(j + 1) + "}: adjoint image " +
            vector_str(witness) + " leaves the span");
      ops[i].push_back(gram_inv * basis.transpose() * g * t.op(i, j) * basis);
    }
  std::optional<Matrix> metric;
  if (!(gram == Matrix::identity(basis.cols()))) metric = gram;
  return PolyballTuple(t.shape(), basis.cols(), std::move(ops),
                       std::move(metric));
}

// ---------------------------------------------------------------------------
// Gradings

void verify_grading(const PolyballTuple& t, const Grading& g) {
  if (t.has_metric())
    throw PreconditionError("gradings require an orthonormal basis (no metric)");
  if (g.degree_of.size() != t.dim())
    throw PreconditionError("grading has " + std::to_string(g.degree_of.size()) +
                            " degrees for dim " + std::to_string(t.dim()));
  for (const auto& d : g.degree_of)
    if (d.k() != t.shape().k())
      throw PreconditionError("grading degree has wrong length");
  for (std::size_t i = 0; i < t.shape().k(); ++i)
    for (std::size_t j = 0; j < t.ops()[i].size(); ++j) {
      const Matrix& op = t.op(i, j);
      for (std::size_t col = 0; col < t.dim(); ++col)
        for (std::size_t row = 0; row < t.dim(); ++row)
          if (sgn(op(row, col)) != 0 &&
              !(g.degree_of[row] == g.degree_of[col].plus_unit(i))) {
            std::ostringstream os;
            os << "grading invariant fails: T_{" << i + 1 << "," << j + 1
               << "} maps basis vector " << col << " of degree s="
               << g.degree_of[col].str() << " outside degree s+e_" << i + 1;
            throw PreconditionError(os.str());
          }
    }
}

GradingSplit grading_split(const PolyballTuple& t, const Grading& g) {
  verify_grading(t, g);
  const DefectData defect = defect_data(t);
  const std::size_t k = t.shape().k();
  GradingSplit out;
  bool any = false;
  for (std::size_t col = 0; col < t.dim(); ++col) {
    bool nonzero = false;
    for (std::size_t row = 0; row < t.dim() && !nonzero; ++row)
      nonzero = sgn(defect.delta(row, col)) != 0;
    if (!nonzero) continue;
    const MultiDegree& s = g.degree_of[col];
    if (!any) {
      out.lower = out.upper = s;
      any = true;
    }
    for (std::size_t i = 0; i < k; ++i) {
      out.lower[i] = std::min(out.lower[i], s[i]);
      out.upper[i] = std::max(out.upper[i], s[i]);
    }
  }
  if (!any) throw PreconditionError("grading_split: Delta_T(I) is zero");

  // Delta commutes with each Q_s iff it has no entries between different
  // degrees.
  out.delta_commutes = true;
  for (std::size_t r = 0; r < t.dim(); ++r)
    for (std::size_t c = 0; c < t.dim(); ++c)
      if (sgn(defect.delta(r, c)) != 0 && !(g.degree_of[r] == g.degree_of[c]))
        out.delta_commutes = false;

  for (std::size_t b = 0; b < t.dim(); ++b)
    if (out.upper.leq(g.degree_of[b])) out.h0_indices.push_back(b);
  std::vector<std::vector<Matrix>> ops(k);
  for (std::size_t i = 0; i < k; ++i)
    for (const Matrix& op : t.ops()[i])
      ops[i].push_back(op.submatrix(out.h0_indices, out.h0_indices));
  out.restricted =
      PolyballTuple(t.shape(), out.h0_indices.size(), std::move(ops));
  out.certificate = is_in_polyball(out.restricted);
  return out;
}

}  // namespace polyeuler

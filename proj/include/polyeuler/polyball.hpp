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

// Finite dimensional elements of the regular polyball as rational matrices.
//
// A tuple acts on Q^m with an inner product <x, y> = x^T G y. The metric G
// defaults to the identity; restrictions and compressions to subspaces with
// a non-orthonormal rational basis carry the Gram matrix of that basis so
// that no square roots are ever taken.
//
// Self-adjoint operators Y are stored through their kernel K = Y G^{-1},
// which is symmetric. In kernel form
//
//   Phi_i(K) = sum_j T_{i,j} K T_{i,j}^T,   I <-> G^{-1},
//   rank Y = rank K,   trace Y = trace(K G),   Y >= 0  <=>  K >= 0,
//
// and for the default metric the kernel is the operator itself.

#ifndef POLYEULER_POLYBALL_HPP_
#define POLYEULER_POLYBALL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polyeuler/fock.hpp"
#include "polyeuler/matrix.hpp"

namespace polyeuler {

class PolyballTuple {
 public:
  PolyballTuple() = default;
  /// ops[i][j] is T_{i,j+1}, a dim x dim matrix. Checks sizes and
  /// cross-factor commutation; throws PreconditionError naming the first
  /// non-commuting pair.
  PolyballTuple(Shape shape, std::size_t dim,
                std::vector<std::vector<Matrix>> ops,
                std::optional<Matrix> metric = std::nullopt);

  const Shape& shape() const { return shape_; }
  std::size_t dim() const { return dim_; }
  const Matrix& op(std::size_t i, std::size_t j) const { return ops_[i][j]; }
  const std::vector<std::vector<Matrix>>& ops() const { return ops_; }
  bool has_metric() const { return metric_.has_value(); }
  /// Gram matrix of the inner product (identity when no metric is set).
  Matrix metric() const;
  /// Kernel of the identity operator: G^{-1}.
  Matrix identity_kernel() const;
  /// trace of the operator with kernel k.
  Rational operator_trace(const Matrix& k) const;

 private:
  Shape shape_;
  std::size_t dim_ = 0;
  std::vector<std::vector<Matrix>> ops_;
  std::optional<Matrix> metric_;
};

/// Phi_i(Y) = sum_j T_{i,j} Y T_{i,j}^T (kernel form).
Matrix phi_apply(const PolyballTuple& t, std::size_t i, const Matrix& y);
/// Phi_i^power(Y).
Matrix phi_power(const PolyballTuple& t, std::size_t i, int power,
                 const Matrix& y);

/// (id - Phi_1)^{p_1} o ... o (id - Phi_k)^{p_k} (I).
Matrix defect_map(const PolyballTuple& t, const std::vector<int>& p);

struct DefectData {
  Matrix delta;  // Delta_T(I)
  std::size_t delta_rank = 0;
  Matrix defect_basis;  // columns spanning range Delta_T(I)
};

DefectData defect_data(const PolyballTuple& t);

struct PolyballMembership {
  bool member = false;
  std::vector<int> violating_p;   // empty when member
  std::vector<Rational> witness;  // v with v^T Delta^p v < 0
  Rational witness_value;
};

PolyballMembership is_in_polyball(const PolyballTuple& t);

/// sum over multiwords beta with |beta_i| <= q_i of
/// T_beta Delta_T(I) T_beta^T, with T_beta = T_{1,beta_1} ... T_{k,beta_k}.
Matrix berezin_gram(const PolyballTuple& t, const MultiDegree& q);
/// (id - Phi_1^{q_1+1}) o ... o (id - Phi_k^{q_k+1}) (I).
Matrix phi_power_formula(const PolyballTuple& t, const MultiDegree& q);
/// sum_{s <= q} Phi_1^{s_1} o ... o Phi_k^{s_k} (Delta_T(I)).
Matrix telescoping_sum(const PolyballTuple& t, const MultiDegree& q);

/// dim span{T_{1,a_1} ... T_{k,a_k} h : |a_i| <= q_i, h in range(d)}, by
/// breadth-first application of the T_{i,j}.
std::size_t span_dim(const PolyballTuple& t, const Matrix& d,
                     const MultiDegree& q);

struct PurityReport {
  /// traces[i][p-1] = trace Phi_i^p(I).
  std::vector<std::vector<Rational>> traces;
  bool decayed = false;  // every factor reached <= tol by max_power
  std::string status;    // "pure up to max_power" or "not decayed"
};

PurityReport is_pure(const PolyballTuple& t, const Rational& tol,
                     int max_power);

/// Tuple on H_1 x ... x H_m acting by I x ... x X_{r,s} x ... x I; the shape
/// is the concatenation of the shapes.
PolyballTuple ampliation(const std::vector<PolyballTuple>& xs);
PolyballTuple direct_sum(const PolyballTuple& a, const PolyballTuple& b);

/// T|_M for the invariant subspace M spanned by the columns of basis. The
/// result acts in the coordinates of that basis. Throws PreconditionError
/// with a witness when M is not invariant.
PolyballTuple restrict_invariant(const PolyballTuple& t, const Matrix& basis);
/// P_M T|_M for the co-invariant subspace M (invariant under every
/// T_{i,j}^*) spanned by the columns of basis.
PolyballTuple compress_coinvariant(const PolyballTuple& t,
                                   const Matrix& basis);

/// Degree assignment for an orthonormal basis of H.
struct Grading {
  std::vector<MultiDegree> degree_of;
};

/// Throws PreconditionError naming (i, j, s) when some T_{i,j} maps a
/// degree-s basis vector outside degree s + e_i.
void verify_grading(const PolyballTuple& t, const Grading& g);

struct GradingSplit {
  MultiDegree lower;  // c
  MultiDegree upper;  // d
  std::vector<std::size_t> h0_indices;  // basis vectors of degree >= d
  PolyballTuple restricted;             // T|_{H_0}
  PolyballMembership certificate;       // membership of T|_{H_0}
  bool delta_commutes = false;          // Delta Q_s = Q_s Delta for all s
};

GradingSplit grading_split(const PolyballTuple& t, const Grading& g);

}  // namespace polyeuler

#endif  // POLYEULER_POLYBALL_HPP_

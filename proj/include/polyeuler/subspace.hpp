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

// Graded invariant subspaces M of (tensor_i F^2(H_{n_i})) x E.
//
// A graded M is the orthogonal sum of its blocks M_s = M n H_s, so every
// truncated quantity (dimension, trace, projection) is computed block by
// block with exact rational arithmetic.

#ifndef POLYEULER_SUBSPACE_HPP_
#define POLYEULER_SUBSPACE_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "polyeuler/fock.hpp"
#include "polyeuler/matrix.hpp"
#include "polyeuler/sparse.hpp"

namespace polyeuler {

/// Invariant subspace of one factor F^2(H_n): the closed span of all words
/// ending in one of `suffixes`. An empty suffix list describes {0}.
struct SuffixFactor {
  int n = 2;
  std::vector<Word> suffixes;

  /// Suffix list with redundant entries removed (a word that has another
  /// listed word as a suffix adds nothing). The result is suffix-free.
  std::vector<Word> reduced_suffixes() const;
  /// Number of words of length len lying in the subspace.
  Integer level_count(int len) const;
  bool contains_word(const Word& w) const;
};

/// Block M_s, stored as groups of basis rows with disjoint column supports
/// (columns index H_s x E in enumerate_basis order, multiplicity minor).
struct SubspaceBlock {
  struct Component {
    std::vector<std::size_t> columns;  // sorted
    Matrix basis;                      // RREF rows over `columns`
    Matrix gram_inverse;               // (basis basis^T)^{-1}
  };
  std::size_t dim = 0;
  std::vector<Component> components;
  std::map<std::size_t, std::size_t> component_of_column;
};

class GradedSubspace {
 public:
  enum class Kind { kFull, kGenerated, kComplementTensor };

  /// The whole space (tensor F^2) x E.
  static GradedSubspace full(const Shape& shape, int mult_dim = 1);
  /// Closed span of all left shifts S_alpha psi of multi-homogeneous
  /// generators. Rejects zero or non-homogeneous generators.
  static GradedSubspace from_generators(const Shape& shape, int mult_dim,
                                        std::vector<FockVector> generators);
  /// (M_1^perp x ... x M_k^perp)^perp x E for per-factor suffix subspaces.
  static GradedSubspace complement_tensor(std::vector<SuffixFactor> factors,
                                          int mult_dim = 1);

  Kind kind() const { return kind_; }
  const Shape& shape() const { return shape_; }
  int mult_dim() const { return mult_dim_; }
  const std::vector<FockVector>& generators() const { return generators_; }
  const std::vector<SuffixFactor>& factors() const { return factors_; }

  /// Generators of the same subspace; for complement tensors these are the
  /// vectors e_beta placed in factor i (vacuum elsewhere) for every suffix.
  std::vector<FockVector> spanning_generators() const;
  /// Re-expresses the subspace as a Generated one (block dims must agree).
  GradedSubspace as_generated() const;

  /// Componentwise maximum degree of the spanning generators. Beyond this
  /// window M_s = sum_j S_{i,j} M_{s-e_i}, so the defect vanishes there.
  MultiDegree generator_window() const;

  Integer ambient_block_dim(const MultiDegree& s) const;
  std::size_t block_dim(const MultiDegree& s) const;
  /// sum_{s <= q} block_dim(s).
  Integer dim_leq_sub(const MultiDegree& q) const;

  /// Orthogonal projection of a vector supported in degree s onto M_s.
  FockVector project_block(const MultiDegree& s, const FockVector& xi) const;
  /// Blockwise projection of an arbitrary finitely supported vector.
  FockVector project(const FockVector& xi) const;
  bool contains(const FockVector& xi) const;

  /// trace(P_{M_s}) evaluated as sum_b <P b, b> over the basis of H_s x E.
  Rational block_trace(const MultiDegree& s) const;
  /// trace(P_M (P_{<=q} x I_E)).
  Rational trace_leq(const MultiDegree& q) const;

  /// A basis of M_s (RREF rows for generated kinds, basis vectors for the
  /// coordinate kinds).
  std::vector<FockVector> block_basis(const MultiDegree& s) const;

  /// Delta_M xi = sum_{p in {0,1}^k} (-1)^{|p|} Phi_S^p(P_M) xi.
  FockVector defect_apply(const FockVector& xi,
                          const std::optional<MultiDegree>& depth = {}) const;

  std::string describe() const;

  // Internal coordinate helpers shared with the invariants module.
  std::size_t column_of(const BasisKey& key) const;
  BasisKey key_of(const MultiDegree& s, std::size_t column) const;
  SparseRow to_row(const FockVector& v) const;
  FockVector from_row(const MultiDegree& s, const SparseRow& row) const;

 private:
  GradedSubspace() = default;

  std::shared_ptr<const SubspaceBlock> generated_block(
      const MultiDegree& s) const;

  struct Cache {
    std::mutex mu;
    std::map<MultiDegree, std::shared_ptr<const SubspaceBlock>> blocks;
  };

  Kind kind_ = Kind::kFull;
  Shape shape_;
  int mult_dim_ = 1;
  std::vector<FockVector> generators_;
  std::vector<SuffixFactor> factors_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Outcome of the exact Beurling checks on H_{<=q}.
struct BeurlingReport {
  bool isometries = false;      // <psi~_s(R)b, psi~_t(R)b'> = delta_st <b,b'>
  bool reconstruction = false;  // P_M = sum_s psi~_s(R) psi~_s(R)^*
  bool defect = false;          // Delta_M xi = sum_s <xi,psi_s> psi_s
  bool pass() const { return isometries && reconstruction && defect; }
  std::string counterexample;
};

BeurlingReport beurling_verify(const std::vector<FockVector>& psis,
                               const MultiDegree& q);

/// Floating point trace[P^{(Q)} P_{<=q}] where P^{(Q)} projects onto
/// span{S_alpha g : alpha <= Q}, for possibly non-homogeneous generators.
struct NumericTraceReport {
  std::vector<MultiDegree> cutoffs;
  std::vector<double> values;  // approximate
  double last_increment = 0.0;
  bool ill_conditioned = false;
  std::string diagnostic;
};

NumericTraceReport numeric_mode_trace(const std::vector<FockVector>& gens,
                                      const MultiDegree& q,
                                      const MultiDegree& inner_cutoff);

}  // namespace polyeuler

#endif  // POLYEULER_SUBSPACE_HPP_

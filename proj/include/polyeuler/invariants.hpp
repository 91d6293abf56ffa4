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

// Euler characteristic and curvature sequences over box truncations, and
// the exact identity checks built on them.

#ifndef POLYEULER_INVARIANTS_HPP_
#define POLYEULER_INVARIANTS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polyeuler/fock.hpp"
#include "polyeuler/polyball.hpp"
#include "polyeuler/subspace.hpp"

namespace polyeuler {

struct TupleSource {
  PolyballTuple tuple;
  std::optional<Grading> grading;
};
/// Compression P_{M^perp} (S x I)|_{M^perp}.
struct CoinvariantSource {
  GradedSubspace subspace;
};
/// Restriction (S x I)|_M.
struct RestrictionSource {
  GradedSubspace subspace;
};

using InvariantSource =
    std::variant<TupleSource, CoinvariantSource, RestrictionSource>;

const Shape& source_shape(const InvariantSource& src);
std::string source_kind(const InvariantSource& src);

enum class InvariantKind { kChi, kCurv, kCurvSimplex };
std::string to_string(InvariantKind kind);

struct SequenceEntry {
  MultiDegree q;
  Rational numerator;
  Rational denominator;
  Rational value;
  // Contribution of the single level q (inclusion-exclusion of the box
  // numerators) over dim H_q. Equal to the box entry for simplex sequences.
  Rational level_numerator;
  Rational level_denominator;
  Rational level_value;
};

struct LimitReport {
  std::string status;  // exact-stabilized | monotone-converging | inconclusive
  Rational last_value;
  Rational last_delta;
  std::vector<MultiDegree> chain;
  std::string note;
};

struct InvariantSequence {
  InvariantKind kind = InvariantKind::kChi;
  std::string source;
  Shape shape;
  std::vector<SequenceEntry> entries;  // box(q_max) order
  LimitReport limit;
  /// Oracle disagreements found while computing (hard failures).
  std::vector<std::string> failures;
  bool truncated_expansion = false;

  const SequenceEntry* find(const MultiDegree& q) const;
};

struct EvalOptions {
  int workers = 1;
  /// Set when the source comes from a truncated base-n expansion; blocks
  /// any exact limit claim.
  bool truncated_expansion = false;
};

InvariantSequence chi_sequence(const InvariantSource& src,
                               const MultiDegree& q_max,
                               const EvalOptions& opts = {});
InvariantSequence curv_sequence(const InvariantSource& src,
                                const MultiDegree& q_max,
                                const EvalOptions& opts = {});
/// Simplex averages (1/C(m+k,k)) sum_{|s| <= m} level ratios, m = 0..m_max.
/// Entry q is the diagonal (m, ..., m) used only as a label.
InvariantSequence curv_simplex_sequence(const InvariantSource& src, int m_max,
                                        const EvalOptions& opts = {});

/// Limit report along the given cofinal chain (must be increasing and lie
/// in the computed box); the default chain is the diagonal.
LimitReport limit_report(const InvariantSequence& seq,
                         std::vector<MultiDegree> chain = {});

/// Outcome of an exact check; one line per truncation examined.
struct CheckReport {
  std::string name;
  bool pass = true;
  std::vector<std::string> details;
  std::string failure;  // first failure

  void fail(const std::string& msg);
  void merge(const CheckReport& other);
};

/// KPK identity, telescoping form, oracle triangle and PSD chain.
CheckReport verify_identities(const PolyballTuple& t, const MultiDegree& q_max);
/// trace <= rank and span_dim <= dim_leq * rank Delta.
CheckReport inequality_check(const PolyballTuple& t, const MultiDegree& q_max);
/// chi_q and curv_q of a direct sum are the sums.
CheckReport additivity_check(const PolyballTuple& a, const PolyballTuple& b,
                             const MultiDegree& q_max);
/// chi_q of the ampliation at concatenated q is the product of the chi's.
CheckReport multiplicativity_check(const std::vector<PolyballTuple>& xs,
                                   const std::vector<MultiDegree>& q_max);
/// Coinvariant form: chi_q of (M_1^perp x ... x M_m^perp)^perp equals the
/// product of the chi_{q_i}(M_i^perp). The tensor subspace is built from
/// embedded generators and, for suffix subspaces, also as a complement
/// tensor.
CheckReport coinvariant_multiplicativity_check(
    const std::vector<GradedSubspace>& ms,
    const std::vector<MultiDegree>& q_max);

enum class PerturbationForm { kInvariant, kCoinvariant };
CheckReport perturbation_check(const PolyballTuple& t, const Matrix& basis,
                               PerturbationForm form, const MultiDegree& q_max);

/// trace(numerator) == rank(numerator) at every q <= q_max for graded
/// sources. Tuples need a grading; the check runs on T|_{H_0}.
CheckReport gbc_check(const InvariantSource& src, const MultiDegree& q_max,
                      const EvalOptions& opts = {});

/// Reorders the factors: factor i of the result is factor perm[i] of src.
InvariantSource permute_source(const InvariantSource& src,
                               const std::vector<std::size_t>& perm);
MultiDegree permute_degree(const MultiDegree& q,
                           const std::vector<std::size_t>& perm);

}  // namespace polyeuler

#endif  // POLYEULER_INVARIANTS_HPP_

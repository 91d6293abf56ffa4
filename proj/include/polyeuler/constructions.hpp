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

// Suffix subspaces whose orthocomplements have a prescribed Euler
// characteristic t, built from base-n expansions of 1 - t.

#ifndef POLYEULER_CONSTRUCTIONS_HPP_
#define POLYEULER_CONSTRUCTIONS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "polyeuler/fock.hpp"
#include "polyeuler/subspace.hpp"

namespace polyeuler {

struct ExpansionTerm {
  int position;  // k_p, strictly increasing, >= 1
  int digit;     // d_p in 1..n-1
  friend bool operator==(const ExpansionTerm&, const ExpansionTerm&) = default;
};

struct ExpansionSpec {
  int n = 2;
  Rational t;
  std::vector<ExpansionTerm> terms;
  bool exact = true;  // sum d_p / n^{k_p} == 1 - t

  Rational partial_sum() const;
  /// 1 - sum_{k_p <= level} d_p / n^{k_p}: the complement ratio at a level.
  Rational level_ratio(int level) const;
};

/// Greedy base-n expansion of 1 - t with digits capped at n - 1, stopping
/// after max_terms nonzero digits.
ExpansionSpec expand(const Rational& t, int n, int max_terms);

/// Union of the suffix sets J_p. Pairwise suffix-free.
std::vector<Word> build_Ji(const ExpansionSpec& spec);

/// Single-factor subspace of all words ending in a word of build_Ji(spec).
GradedSubspace build_Mi(const ExpansionSpec& spec, int mult_dim = 1);

struct Construction {
  GradedSubspace subspace;
  std::vector<ExpansionSpec> expansions;
  bool exact = true;
  std::string description;
};

/// (M_1(t)^perp x F^2 x ... x F^2)^perp; t = 1 gives the zero subspace.
/// mult_dim > 1 tensors with C^m, scaling the Euler characteristic by m.
Construction build_M_t(const Shape& shape, const Rational& t,
                       int max_terms = 64, int mult_dim = 1);

/// (M_1(omega)^perp x M_2(t/omega)^perp x F^2 x ...)^perp.
Construction build_M_omega_t(const Shape& shape, const Rational& t,
                             const Rational& omega, int max_terms = 64,
                             int mult_dim = 1);

/// Inputs of a construction as read from key=value pairs or JSON.
struct ConstructionSpec {
  Rational t;
  std::optional<Rational> omega;
  std::vector<int> shape{2};
  int max_terms = 64;
  int mult_dim = 1;
};

Construction build(const ConstructionSpec& spec);

}  // namespace polyeuler

#endif  // POLYEULER_CONSTRUCTIONS_HPP_

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

#ifndef POLYEULER_SPARSE_HPP_
#define POLYEULER_SPARSE_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "polyeuler/rational.hpp"

namespace polyeuler {

/// Sparse rational row, entries sorted by column, no stored zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// row += factor * other.
void axpy(SparseRow& row, const Rational& factor, const SparseRow& other);

Rational dot(const SparseRow& a, const SparseRow& b);

/// Reduced row echelon basis of span(rows): leading entries equal 1, each
/// pivot column is zero in every other basis row, rows ordered by pivot.
std::vector<SparseRow> sparse_rref(const std::vector<SparseRow>& rows);

/// Partition of rows into groups with pairwise disjoint column supports
/// (connected components of the row/column incidence graph). Groups are
/// ordered by their smallest column; each lists row indices ascending.
std::vector<std::vector<std::size_t>> column_components(
    const std::vector<SparseRow>& rows);

/// Rank of span(rows), eliminating each connected component separately.
std::size_t sparse_rank(const std::vector<SparseRow>& rows);

}  // namespace polyeuler

#endif  // POLYEULER_SPARSE_HPP_

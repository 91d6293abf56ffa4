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

#include "polyeuler/sparse.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace polyeuler {

void axpy(SparseRow& row, const Rational& factor, const SparseRow& other) {
  if (sgn(factor) == 0 || other.empty()) return;
  SparseRow out;
  out.reserve(row.size() + other.size());
  auto a = row.begin();
  auto b = other.begin();
  while (a != row.end() || b != other.end()) {
    if (b == other.end() || (a != row.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == row.end() || b->first < a->first) {
      out.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      Rational v = a->second + factor * b->second;
      if (sgn(v) != 0) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  row = std::move(out);
}

Rational dot(const SparseRow& a, const SparseRow& b) {
  Rational s = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      s += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return s;
}

std::vector<SparseRow> sparse_rref(const std::vector<SparseRow>& rows) {
  // pivot column -> basis row; every basis row vanishes on the other pivots.
  std::map<std::size_t, SparseRow> basis;
  for (const SparseRow& input : rows) {
    SparseRow row = input;
    std::vector<std::pair<std::size_t, const SparseRow*>> hits;
    for (const auto& [col, val] : row) {
      auto it = basis.find(col);
      if (it != basis.end()) hits.emplace_back(col, &it->second);
    }
    // Subtracting a reduced basis row only touches its own pivot and
    // non-pivot columns, so one pass over the initial hits suffices.
    for (const auto& [col, b] : hits) {
      auto it = std::lower_bound(
          row.begin(), row.end(), col,
          [](const auto& e, std::size_t c) { return e.first < c; });
      if (it == row.end() || it->first != col) continue;
      Rational f = -it->second;
      axpy(row, f, *b);
    }
    if (row.empty()) continue;
    const std::size_t pivot = row.front().first;
    const Rational lead = row.front().second;
    if (lead != 1)
      for (auto& e : row) e.second /= lead;
    for (auto& [pc, b] : basis) {
      auto it = std::lower_bound(
          b.begin(), b.end(), pivot,
          [](const auto& e, std::size_t c) { return e.first < c; });
      if (it == b.end() || it->first != pivot) continue;
      Rational f = -it->second;
      axpy(b, f, row);
    }
    basis.emplace(pivot, std::move(row));
  }
  std::vector<SparseRow> out;
  out.reserve(basis.size());
  for (auto& [pc, b] : basis) out.push_back(std::move(b));
  return out;
}

std::vector<std::vector<std::size_t>> column_components(
    const std::vector<SparseRow>& rows) {
  std::vector<std::size_t> parent(rows.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::unordered_map<std::size_t, std::size_t> owner;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [col, val] : rows[r]) {
      auto [it, inserted] = owner.try_emplace(col, r);
      if (!inserted) {
        std::size_t a = find(it->second), b = find(r);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    by_root[find(r)].push_back(r);
  }
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> groups;
  for (auto& [root, members] : by_root) {
    std::size_t min_col = rows[members.front()].front().first;
    for (std::size_t r : members)
      min_col = std::min(min_col, rows[r].front().first);
    groups.emplace_back(min_col, std::move(members));
  }
  std::sort(groups.begin(), groups.end());
  std::vector<std::vector<std::size_t>> out;
  out.reserve(groups.size());
  for (auto& g : groups) out.push_back(std::move(g.second));
  return out;
}

std::size_t sparse_rank(const std::vector<SparseRow>& rows) {
  std::size_t total = 0;
  for (const auto& group : column_components(rows)) {
    if (group.size() == 1) {
      ++total;
      continue;
    }
    std::vector<SparseRow> sub;
    sub.reserve(group.size());
    for (std::size_t r : group) sub.push_back(rows[r]);
    total += sparse_rref(sub).size();
  }
  return total;
}

}  // namespace polyeuler

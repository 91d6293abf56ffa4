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

#include "polyeuler/subspace.hpp"

#include <algorithm>
#include <sstream>

namespace polyeuler {

// ---------------------------------------------------------------------------
// SuffixFactor

namespace {

bool has_suffix(const Word& w, const Word& suffix) {
  return suffix.size() <= w.size() &&
         std::equal(suffix.begin(), suffix.end(),
                    w.end() - static_cast<long>(suffix.size()));
}

}  // namespace

std::vector<Word> SuffixFactor::reduced_suffixes() const {
  std::vector<Word> sorted = suffixes;
  std::sort(sorted.begin(), sorted.end(),
            [](const Word& a, const Word& b) { return compare_words(a, b) < 0; });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Word> out;
  for (const Word& w : sorted) {
    bool redundant = std::any_of(out.begin(), out.end(), [&](const Word& s) {
      return has_suffix(w, s);
    });
    if (!redundant) out.push_back(w);
  }
  return out;
}

Integer SuffixFactor::level_count(int len) const {
  Integer count = 0;
  for (const Word& b : reduced_suffixes()) {
    const int lb = static_cast<int>(b.size());
    if (lb <= len) count += ipow(static_cast<std::uint64_t>(n), len - lb);
  }
  return count;
}

bool SuffixFactor::contains_word(const Word& w) const {
  return std::any_of(suffixes.begin(), suffixes.end(),
                     [&](const Word& s) { return has_suffix(w, s); });
}

// ---------------------------------------------------------------------------
// Construction

GradedSubspace GradedSubspace::full(const Shape& shape, int mult_dim) {
  if (mult_dim < 1) throw PreconditionError("mult_dim must be >= 1");
  GradedSubspace m;
  m.kind_ = Kind::kFull;
  m.shape_ = shape;
  m.mult_dim_ = mult_dim;
  return m;
}

GradedSubspace GradedSubspace::from_generators(
    const Shape& shape, int mult_dim, std::vector<FockVector> generators) {
  if (mult_dim < 1) throw PreconditionError("mult_dim must be >= 1");
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const FockVector& v = generators[g];
    if (!(v.shape() == shape) || v.mult_dim() != mult_dim)
      throw PreconditionError("generator " + std::to_string(g) +
                              " does not match the shape/multiplicity");
    if (v.is_zero())
      throw PreconditionError("generator " + std::to_string(g) + " is zero");
    if (!v.homogeneous_degree())
      throw PreconditionError(
          "generator " + std::to_string(g) + " (" + to_string(v) +
          ") is not multi-homogeneous; use numeric_mode_trace for "
          "non-graded subspaces");
  }
  GradedSubspace m;
  m.kind_ = Kind::kGenerated;
  m.shape_ = shape;
  m.mult_dim_ = mult_dim;
  m.generators_ = std::move(generators);
  return m;
}

GradedSubspace GradedSubspace::complement_tensor(
    std::vector<SuffixFactor> factors, int mult_dim) {
  if (factors.empty())
    throw PreconditionError("complement_tensor needs at least one factor");
  if (mult_dim < 1) throw PreconditionError("mult_dim must be >= 1");
  std::vector<int> n;
  for (const auto& f : factors) {
    if (f.n < 1) throw PreconditionError("factor n must be >= 1");
    for (const Word& w : f.suffixes)
      for (int letter : w)
        if (letter < 1 || letter > f.n)
          throw PreconditionError("suffix letter out of range");
    n.push_back(f.n);
  }
  GradedSubspace m;
  m.kind_ = Kind::kComplementTensor;
  m.shape_ = Shape(std::move(n));
  m.mult_dim_ = mult_dim;
  m.factors_ = std::move(factors);
  return m;
}

std::vector<FockVector> GradedSubspace::spanning_generators() const {
  std::vector<FockVector> out;
  switch (kind_) {
    case Kind::kFull:
      for (int m = 1; m <= mult_dim_; ++m)
        out.push_back(FockVector::vacuum(shape_, mult_dim_, m));
      break;
    case Kind::kGenerated:
      out = generators_;
      break;
    case Kind::kComplementTensor:
      for (std::size_t i = 0; i < factors_.size(); ++i)
        for (const Word& b : factors_[i].reduced_suffixes())
          for (int m = 1; m <= mult_dim_; ++m) {
            MultiWord w = vacuum_word(shape_.k());
            w.words[i] = b;
            out.push_back(FockVector::basis(shape_, w, mult_dim_, m));
          }
      break;
  }
  return out;
}

GradedSubspace GradedSubspace::as_generated() const {
  return from_generators(shape_, mult_dim_, spanning_generators());
}

MultiDegree GradedSubspace::generator_window() const {
  MultiDegree w = MultiDegree::zero(shape_.k());
  for (const FockVector& g : spanning_generators()) {
    MultiDegree d = g.max_degree();
    for (std::size_t i = 0; i < w.k(); ++i) w[i] = std::max(w[i], d[i]);
  }
  return w;
}

// ---------------------------------------------------------------------------
// Coordinates

std::size_t GradedSubspace::column_of(const BasisKey& key) const {
  return level_index(shape_, key.word) * static_cast<std::size_t>(mult_dim_) +
         static_cast<std::size_t>(key.mult - 1);
}

BasisKey GradedSubspace::key_of(const MultiDegree& s,
                                std::size_t column) const {
  const auto r = static_cast<std::size_t>(mult_dim_);
  return BasisKey{level_word(shape_, s, column / r),
                  static_cast<int>(column % r) + 1};
}

SparseRow GradedSubspace::to_row(const FockVector& v) const {
  SparseRow row;
  row.reserve(v.size());
  for (const auto& [key, c] : v.terms()) row.emplace_back(column_of(key), c);
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

FockVector GradedSubspace::from_row(const MultiDegree& s,
                                    const SparseRow& row) const {
  FockVector v(shape_, mult_dim_);
  for (const auto& [col, c] : row) v.add(key_of(s, col), c);
  return v;
}

Integer GradedSubspace::ambient_block_dim(const MultiDegree& s) const {
  return dim_level(shape_, s) * mult_dim_;
}

// ---------------------------------------------------------------------------
// Blocks

std::shared_ptr<const SubspaceBlock> GradedSubspace::generated_block(
    const MultiDegree& s) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->blocks.find(s);
    if (it != cache_->blocks.end()) return it->second;
  }
  // Rows S_alpha psi for every generator psi of degree d <= s and every
  // alpha of degree s - d. Distinct alpha give disjoint supports, so the
  // row set splits into many small components.
  std::vector<SparseRow> rows;
  for (const FockVector& g : generators_) {
    const MultiDegree d = *g.homogeneous_degree();
    if (!d.leq(s)) continue;
    for (const MultiWord& alpha : enumerate_basis(shape_, s - d)) {
      SparseRow row;
      row.reserve(g.size());
      for (const auto& [key, c] : g.terms()) {
        BasisKey shifted = key;
        for (std::size_t i = 0; i < shape_.k(); ++i) {
          Word& w = shifted.word.words[i];
          w.insert(w.begin(), alpha.words[i].begin(), alpha.words[i].end());
        }
        row.emplace_back(column_of(shifted), c);
      }
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      rows.push_back(std::move(row));
    }
  }

  auto block = std::make_shared<SubspaceBlock>();
  for (const auto& group : column_components(rows)) {
    std::vector<SparseRow> sub;
    std::vector<std::size_t> cols;
    for (std::size_t r : group) {
      sub.push_back(rows[r]);
      for (const auto& e : rows[r]) cols.push_back(e.first);
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::vector<SparseRow> reduced = sparse_rref(sub);

    SubspaceBlock::Component comp;
    comp.basis = Matrix(reduced.size(), cols.size());
    for (std::size_t i = 0; i < reduced.size(); ++i)
      for (const auto& [col, c] : reduced[i]) {
        auto pos = std::lower_bound(cols.begin(), cols.end(), col);
        comp.basis(i, static_cast<std::size_t>(pos - cols.begin())) = c;
      }
    comp.gram_inverse =
        inverse(comp.basis * comp.basis.transpose());
    const std::size_t index = block->components.size();
    for (std::size_t col : cols) block->component_of_column.emplace(col, index);
    comp.columns = std::move(cols);
    block->dim += reduced.size();
    block->components.push_back(std::move(comp));
  }

  std::lock_guard<std::mutex> lock(cache_->mu);
  auto [it, inserted] = cache_->blocks.emplace(s, std::move(block));
  return it->second;
}

std::size_t GradedSubspace::block_dim(const MultiDegree& s) const {
  if (s.k() != shape_.k()) throw PreconditionError("multidegree/shape mismatch");
  switch (kind_) {
    case Kind::kFull:
      return ambient_block_dim(s).get_ui();
    case Kind::kGenerated:
      return generated_block(s)->dim;
    case Kind::kComplementTensor: {
      Integer complement = 1;
      for (std::size_t i = 0; i < factors_.size(); ++i)
        complement *= ipow(static_cast<std::uint64_t>(factors_[i].n), s[i]) -
                      factors_[i].level_count(s[i]);
      Integer d = (dim_level(shape_, s) - complement) * mult_dim_;
      return d.get_ui();
    }
  }
  return 0;
}

Integer GradedSubspace::dim_leq_sub(const MultiDegree& q) const {
  Integer total = 0;
  for (const MultiDegree& s : box(q)) total += block_dim(s);
  return total;
}

FockVector GradedSubspace::project_block(const MultiDegree& s,
                                         const FockVector& xi) const {
  for (const auto& [key, c] : xi.terms())
    if (key.word.degree() != s)
      throw PreconditionError("project_block: vector not supported in degree " +
                              s.str());
  switch (kind_) {
    case Kind::kFull:
      return xi;
    case Kind::kComplementTensor: {
      FockVector out(shape_, mult_dim_);
      for (const auto& [key, c] : xi.terms()) {
        bool inside = false;
        for (std::size_t i = 0; i < factors_.size() && !inside; ++i)
          inside = factors_[i].contains_word(key.word.words[i]);
        if (inside) out.add(key, c);
      }
      return out;
    }
    case Kind::kGenerated:
      break;
  }
  auto block = generated_block(s);
  const SparseRow x = to_row(xi);
  // Group the entries of x by component.
  std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> parts;
  for (const auto& [col, c] : x) {
    auto it = block->component_of_column.find(col);
    if (it != block->component_of_column.end())
      parts[it->second].emplace_back(col, c);
  }
  SparseRow result;
  for (const auto& [ci, entries] : parts) {
    const auto& comp = block->components[ci];
    std::vector<Rational> local(comp.columns.size());
    for (const auto& [col, c] : entries) {
      auto pos = std::lower_bound(comp.columns.begin(), comp.columns.end(), col);
      local[static_cast<std::size_t>(pos - comp.columns.begin())] = c;
    }
    // P x = B^T (B B^T)^{-1} B x.
    std::vector<Rational> bx = comp.basis * std::span<const Rational>(local);
    std::vector<Rational> z = comp.gram_inverse * std::span<const Rational>(bx);
    std::vector<Rational> px =
        comp.basis.transpose() * std::span<const Rational>(z);
    for (std::size_t j = 0; j < px.size(); ++j)
      if (sgn(px[j]) != 0) result.emplace_back(comp.columns[j], px[j]);
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return from_row(s, result);
}

FockVector GradedSubspace::project(const FockVector& xi) const {
  FockVector out(shape_, mult_dim_);
  for (const auto& [deg, piece] : xi.split_by_degree())
    out += project_block(deg, piece);
  return out;
}

bool GradedSubspace::contains(const FockVector& xi) const {
  return project(xi) == xi;
}

Rational GradedSubspace::block_trace(const MultiDegree& s) const {
  switch (kind_) {
    case Kind::kFull:
      return Rational(ambient_block_dim(s));
    case Kind::kComplementTensor: {
      // P_{M^perp} = tensor of the factor projections P_{M_i^perp}, each
      // diagonal in the word basis; evaluate <P e_w, e_w> word by word.
      Integer complement_trace = 1;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Shape one({factors_[i].n});
        Integer t = 0;
        for (const MultiWord& w : enumerate_basis(one, MultiDegree({s[i]})))
          if (!factors_[i].contains_word(w.words[0])) ++t;
        complement_trace *= t;
      }
      return Rational((dim_level(shape_, s) - complement_trace) * mult_dim_);
    }
    case Kind::kGenerated:
      break;
  }
  auto block = generated_block(s);
  Rational trace = 0;
  for (const auto& comp : block->components) {
    // sum over columns c of (B^T G^{-1} B)_{cc}.
    Matrix gb = comp.gram_inverse * comp.basis;
    for (std::size_t i = 0; i < comp.basis.rows(); ++i)
      for (std::size_t c = 0; c < comp.basis.cols(); ++c)
        trace += comp.basis(i, c) * gb(i, c);
  }
  return trace;
}

Rational GradedSubspace::trace_leq(const MultiDegree& q) const {
  Rational total = 0;
  for (const MultiDegree& s : box(q)) total += block_trace(s);
  return total;
}

std::vector<FockVector> GradedSubspace::block_basis(
    const MultiDegree& s) const {
  std::vector<FockVector> out;
  switch (kind_) {
    case Kind::kFull:
      for (const MultiWord& w : enumerate_basis(shape_, s))
        for (int m = 1; m <= mult_dim_; ++m)
          out.push_back(FockVector::basis(shape_, w, mult_dim_, m));
      return out;
    case Kind::kComplementTensor:
      for (const MultiWord& w : enumerate_basis(shape_, s)) {
        bool inside = false;
        for (std::size_t i = 0; i < factors_.size() && !inside; ++i)
          inside = factors_[i].contains_word(w.words[i]);
        if (!inside) continue;
        for (int m = 1; m <= mult_dim_; ++m)
          out.push_back(FockVector::basis(shape_, w, mult_dim_, m));
      }
      return out;
    case Kind::kGenerated:
      break;
  }
  auto block = generated_block(s);
  for (const auto& comp : block->components)
    for (std::size_t i = 0; i < comp.basis.rows(); ++i) {
      SparseRow row;
      for (std::size_t j = 0; j < comp.columns.size(); ++j)
        if (sgn(comp.basis(i, j)) != 0)
          row.emplace_back(comp.columns[j], comp.basis(i, j));
      out.push_back(from_row(s, row));
    }
  return out;
}

FockVector GradedSubspace::defect_apply(
    const FockVector& xi, const std::optional<MultiDegree>& depth) const {
  if (depth) {
    for (const auto& [key, c] : xi.terms())
      if (!key.word.degree().leq(*depth))
        throw PreconditionError("defect_apply: vector exceeds depth " +
                                depth->str());
  }
  const std::size_t k = shape_.k();
  FockVector out(shape_, mult_dim_);
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) active.push_back(i);
    const Rational sign = (active.size() % 2 == 0) ? 1 : -1;
    // Phi^p(P_M) xi = sum over letters j_i (i active) of
    // S_J P_M S_J^* xi.
    std::vector<int> letters(active.size(), 1);
    while (true) {
      FockVector v = xi;
      for (std::size_t t = 0; t < active.size() && !v.is_zero(); ++t)
        v = apply_left_annihilation(active[t], letters[t], v);
      if (!v.is_zero()) {
        v = project(v);
        for (std::size_t t = 0; t < active.size(); ++t)
          v = apply_left_creation(active[t], letters[t], v);
        out += v * sign;
      }
      std::size_t t = 0;
      while (t < active.size() && letters[t] == shape_.n(active[t])) {
        letters[t] = 1;
        ++t;
      }
      if (t == active.size()) break;
      ++letters[t];
    }
  }
  return out;
}

std::string GradedSubspace::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kFull:
      os << "full space on shape " << shape_.str();
      break;
    case Kind::kGenerated:
      os << "subspace generated by " << generators_.size()
         << " multi-homogeneous vector(s) on shape " << shape_.str();
      break;
    case Kind::kComplementTensor:
      os << "complement tensor of " << factors_.size() << " suffix factor(s)";
      break;
  }
  if (mult_dim_ > 1) os << " (multiplicity " << mult_dim_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Beurling decomposition checks

BeurlingReport beurling_verify(const std::vector<FockVector>& psis,
                               const MultiDegree& q) {
  BeurlingReport report;
  if (psis.empty()) throw PreconditionError("beurling_verify: no generators");
  const Shape& shape = psis.front().shape();
  for (const auto& p : psis)
    if (!(p.shape() == shape) || p.mult_dim() != 1)
      throw PreconditionError("beurling_verify: scalar generators required");

  std::vector<FockVector> basis;
  for (const MultiDegree& s : box(q))
    for (const MultiWord& w : enumerate_basis(shape, s))
      basis.push_back(FockVector::basis(shape, w));

  // (a) Gram matrix of all images psi~_s(R) b, accumulated through an
  // inverted index over basis keys.
  std::vector<FockVector> images;
  for (const auto& psi : psis)
    for (const auto& b : basis)
      images.push_back(poly_calculus(psi, Side::kRight, b));
  std::map<BasisKey, std::vector<std::pair<std::size_t, Rational>>> index;
  for (std::size_t id = 0; id < images.size(); ++id)
    for (const auto& [key, c] : images[id].terms())
      index[key].emplace_back(id, c);
  std::map<std::pair<std::size_t, std::size_t>, Rational> gram;
  for (const auto& [key, entries] : index)
    for (std::size_t a = 0; a < entries.size(); ++a)
      for (std::size_t b = a; b < entries.size(); ++b)
        gram[{entries[a].first, entries[b].first}] +=
            entries[a].second * entries[b].second;

  report.isometries = true;
  const std::size_t nb = basis.size();
  for (std::size_t id = 0; id < images.size() && report.isometries; ++id) {
    auto it = gram.find({id, id});
    if (it == gram.end() || it->second != 1) {
      report.isometries = false;
      std::ostringstream os;
      os << "isometry: ||psi~_" << id / nb << "(R) e|| != 1 for e = "
         << to_string(basis[id % nb]);
      report.counterexample = os.str();
    }
  }
  for (const auto& [ids, val] : gram) {
    if (!report.isometries) break;
    if (ids.first == ids.second || sgn(val) == 0) continue;
    report.isometries = false;
    std::ostringstream os;
    os << "isometry/orthogonality: <psi~_" << ids.first / nb << "(R) "
       << to_string(basis[ids.first % nb]) << ", psi~_" << ids.second / nb
       << "(R) " << to_string(basis[ids.second % nb])
       << "> = " << to_string(val);
    report.counterexample = os.str();
  }
  if (!report.isometries) return report;

  bool graded = std::all_of(psis.begin(), psis.end(), [](const auto& p) {
    return p.homogeneous_degree().has_value();
  });
  if (!graded) {
    report.counterexample =
        "reconstruction: generators are not multi-homogeneous";
    return report;
  }
  GradedSubspace m = GradedSubspace::from_generators(shape, 1, psis);

  // (b) P_M = sum_s psi~_s(R) psi~_s(R)^* on every basis vector.
  report.reconstruction = true;
  for (const auto& b : basis) {
    FockVector lhs(shape, 1);
    for (const auto& psi : psis)
      lhs += poly_calculus(psi, Side::kRight,
                           poly_calculus_adjoint(psi, Side::kRight, b));
    if (!(lhs == m.project(b))) {
      report.reconstruction = false;
      report.counterexample = "reconstruction fails at " + to_string(b);
      return report;
    }
  }

  // (c) Delta_M xi = sum_s <xi, psi_s> psi_s.
  report.defect = true;
  for (const auto& b : basis) {
    FockVector rhs(shape, 1);
    for (const auto& psi : psis) rhs += psi * inner_product(b, psi);
    if (!(m.defect_apply(b, q) == rhs)) {
      report.defect = false;
      report.counterexample = "defect formula fails at " + to_string(b);
      return report;
    }
  }
  return report;
}

}  // namespace polyeuler

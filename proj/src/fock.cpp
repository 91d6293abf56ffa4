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

#include "polyeuler/fock.hpp"

#include <algorithm>
#include <sstream>

namespace polyeuler {

// ---------------------------------------------------------------------------
// Shape / MultiDegree

Shape::Shape(std::vector<int> n) : n_(std::move(n)) {
  if (n_.empty()) throw PreconditionError("shape needs at least one factor");
  for (int ni : n_)
    if (ni < 1) throw PreconditionError("shape entries must be >= 1");
}

bool Shape::euler_admissible() const {
  return std::all_of(n_.begin(), n_.end(), [](int x) { return x >= 2; });
}

std::string Shape::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < n_.size(); ++i) os << (i ? "," : "") << n_[i];
  os << ')';
  return os.str();
}

int MultiDegree::total() const {
  int t = 0;
  for (int x : q_) t += x;
  return t;
}

bool MultiDegree::leq(const MultiDegree& p) const {
  if (p.k() != k()) throw PreconditionError("multidegree length mismatch");
  for (std::size_t i = 0; i < q_.size(); ++i)
    if (q_[i] > p.q_[i]) return false;
  return true;
}

MultiDegree MultiDegree::plus_unit(std::size_t i) const {
  MultiDegree r = *this;
  ++r.q_[i];
  return r;
}

MultiDegree MultiDegree::operator+(const MultiDegree& o) const {
  MultiDegree r = *this;
  for (std::size_t i = 0; i < q_.size(); ++i) r.q_[i] += o.q_[i];
  return r;
}

MultiDegree MultiDegree::operator-(const MultiDegree& o) const {
  MultiDegree r = *this;
  for (std::size_t i = 0; i < q_.size(); ++i) r.q_[i] -= o.q_[i];
  return r;
}

std::string MultiDegree::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < q_.size(); ++i) os << (i ? "," : "") << q_[i];
  os << ')';
  return os.str();
}

std::vector<MultiDegree> box(const MultiDegree& q) {
  std::vector<MultiDegree> out;
  for (std::size_t i = 0; i < q.k(); ++i)
    if (q[i] < 0) return out;
  MultiDegree s = MultiDegree::zero(q.k());
  while (true) {
    out.push_back(s);
    std::size_t i = q.k();
    while (i > 0 && s[i - 1] == q[i - 1]) {
      s[i - 1] = 0;
      --i;
    }
    if (i == 0) return out;
    ++s[i - 1];
  }
}

// ---------------------------------------------------------------------------
// Words

std::strong_ordering compare_words(const Word& a, const Word& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(),
                                                b.end());
}

MultiDegree MultiWord::degree() const {
  std::vector<int> q(words.size());
  for (std::size_t i = 0; i < words.size(); ++i)
    q[i] = static_cast<int>(words[i].size());
  return MultiDegree(std::move(q));
}

std::strong_ordering operator<=>(const MultiWord& a, const MultiWord& b) {
  if (auto c = a.words.size() <=> b.words.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.words.size(); ++i)
    if (auto c = compare_words(a.words[i], b.words[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const BasisKey& a, const BasisKey& b) {
  if (auto c = a.word <=> b.word; c != 0) return c;
  return a.mult <=> b.mult;
}

MultiWord vacuum_word(std::size_t k) {
  return MultiWord{std::vector<Word>(k)};
}

Integer dim_level(const Shape& shape, const MultiDegree& s) {
  Integer d = 1;
  for (std::size_t i = 0; i < shape.k(); ++i) d *= ipow(shape.n(i), s[i]);
  return d;
}

Integer dim_leq(const Shape& shape, const MultiDegree& q) {
  if (q.k() != shape.k()) throw PreconditionError("multidegree/shape mismatch");
  Integer d = 1;
  for (std::size_t i = 0; i < shape.k(); ++i) {
    Integer sum = 0;
    for (int e = 0; e <= q[i]; ++e) sum += ipow(shape.n(i), e);
    d *= sum;
  }
  return d;
}

std::size_t level_index(const Shape& shape, const MultiWord& w) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < shape.k(); ++i) {
    std::size_t wi = 0;
    for (int letter : w.words[i])
      wi = wi * static_cast<std::size_t>(shape.n(i)) +
           static_cast<std::size_t>(letter - 1);
    std::size_t size = 1;
    for (std::size_t t = 0; t < w.words[i].size(); ++t)
      size *= static_cast<std::size_t>(shape.n(i));
    idx = idx * size + wi;
  }
  return idx;
}

MultiWord level_word(const Shape& shape, const MultiDegree& s,
                     std::size_t index) {
  MultiWord w = vacuum_word(shape.k());
  for (std::size_t i = shape.k(); i-- > 0;) {
    const auto n = static_cast<std::size_t>(shape.n(i));
    Word& wi = w.words[i];
    wi.assign(static_cast<std::size_t>(s[i]), 1);
    for (std::size_t t = wi.size(); t-- > 0;) {
      wi[t] = static_cast<int>(index % n) + 1;
      index /= n;
    }
  }
  return w;
}

std::vector<MultiWord> enumerate_basis(const Shape& shape,
                                       const MultiDegree& s) {
  if (s.k() != shape.k()) throw PreconditionError("multidegree/shape mismatch");
  const std::size_t count = dim_level(shape, s).get_ui();
  std::vector<MultiWord> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx)
    out.push_back(level_word(shape, s, idx));
  return out;
}

// ---------------------------------------------------------------------------
// FockVector

FockVector::FockVector(Shape shape, int mult_dim)
    : shape_(std::move(shape)), mult_dim_(mult_dim) {
  if (mult_dim_ < 1) throw PreconditionError("mult_dim must be >= 1");
}

FockVector FockVector::vacuum(const Shape& shape, int mult_dim, int m) {
  return basis(shape, vacuum_word(shape.k()), mult_dim, m);
}

FockVector FockVector::basis(const Shape& shape, const MultiWord& w,
                             int mult_dim, int m) {
  FockVector v(shape, mult_dim);
  v.add(BasisKey{w, m}, 1);
  return v;
}

void FockVector::check_key(const BasisKey& key) const {
  if (key.word.words.size() != shape_.k())
    throw PreconditionError("multiword has wrong number of factors");
  for (std::size_t i = 0; i < shape_.k(); ++i)
    for (int letter : key.word.words[i])
      if (letter < 1 || letter > shape_.n(i))
        throw PreconditionError("letter " + std::to_string(letter) +
                                " out of range for factor " +
                                std::to_string(i + 1));
  if (key.mult < 1 || key.mult > mult_dim_)
    throw PreconditionError("multiplicity index out of range");
}

void FockVector::add(const BasisKey& key, const Rational& c) {
  if (sgn(c) == 0) return;
  check_key(key);
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational FockVector::coeff(const BasisKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

FockVector& FockVector::operator+=(const FockVector& o) {
  if (!(o.shape_ == shape_) || o.mult_dim_ != mult_dim_)
    throw PreconditionError("FockVector shape mismatch");
  for (const auto& [key, c] : o.terms_) add(key, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
  if (!(o.shape_ == shape_) || o.mult_dim_ != mult_dim_)
    throw PreconditionError("FockVector shape mismatch");
  for (const auto& [key, c] : o.terms_) add(key, -c);
  return *this;
}

FockVector& FockVector::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, x] : terms_) x *= c;
  return *this;
}

std::optional<MultiDegree> FockVector::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  MultiDegree d = terms_.begin()->first.word.degree();
  for (const auto& [key, c] : terms_)
    if (key.word.degree() != d) return std::nullopt;
  return d;
}

MultiDegree FockVector::max_degree() const {
  MultiDegree d = MultiDegree::zero(shape_.k());
  for (const auto& [key, c] : terms_)
    for (std::size_t i = 0; i < shape_.k(); ++i)
      d[i] = std::max(d[i], static_cast<int>(key.word.words[i].size()));
  return d;
}

std::map<MultiDegree, FockVector> FockVector::split_by_degree() const {
  std::map<MultiDegree, FockVector> out;
  for (const auto& [key, c] : terms_) {
    auto [it, inserted] =
        out.try_emplace(key.word.degree(), FockVector(shape_, mult_dim_));
    it->second.terms_.emplace(key, c);
  }
  return out;
}

Rational FockVector::norm2() const {
  Rational s = 0;
  for (const auto& [key, c] : terms_) s += c * c;
  return s;
}

// ---------------------------------------------------------------------------
// Creation / annihilation

namespace {

void check_letter(const Shape& shape, std::size_t i, int j) {
  if (i >= shape.k()) throw PreconditionError("factor index out of range");
  if (j < 1 || j > shape.n(i)) throw PreconditionError("letter out of range");
}

template <typename F>
FockVector map_keys(const FockVector& v, F&& f) {
  FockVector out(v.shape(), v.mult_dim());
  for (const auto& [key, c] : v.terms()) {
    BasisKey k2 = key;
    if (f(k2)) out.add(k2, c);
  }
  return out;
}

}  // namespace

FockVector apply_left_creation(std::size_t i, int j, const FockVector& v) {
  check_letter(v.shape(), i, j);
  return map_keys(v, [&](BasisKey& key) {
    Word& w = key.word.words[i];
    w.insert(w.begin(), j);
    return true;
  });
}

FockVector apply_right_creation(std::size_t i, int j, const FockVector& v) {
  check_letter(v.shape(), i, j);
  return map_keys(v, [&](BasisKey& key) {
    key.word.words[i].push_back(j);
    return true;
  });
}

FockVector apply_left_annihilation(std::size_t i, int j, const FockVector& v) {
  check_letter(v.shape(), i, j);
  return map_keys(v, [&](BasisKey& key) {
    Word& w = key.word.words[i];
    if (w.empty() || w.front() != j) return false;
    w.erase(w.begin());
    return true;
  });
}

FockVector apply_right_annihilation(std::size_t i, int j,
                                   const FockVector& v) {
  check_letter(v.shape(), i, j);
  return map_keys(v, [&](BasisKey& key) {
    Word& w = key.word.words[i];
    if (w.empty() || w.back() != j) return false;
    w.pop_back();
    return true;
  });
}

FockVector apply_left_word(const MultiWord& alpha, const FockVector& v) {
  return map_keys(v, [&](BasisKey& key) {
    for (std::size_t i = 0; i < alpha.words.size(); ++i) {
      Word& w = key.word.words[i];
      w.insert(w.begin(), alpha.words[i].begin(), alpha.words[i].end());
    }
    return true;
  });
}

FockVector apply_right_word(const MultiWord& alpha, const FockVector& v) {
  return map_keys(v, [&](BasisKey& key) {
    for (std::size_t i = 0; i < alpha.words.size(); ++i) {
      Word& w = key.word.words[i];
      w.insert(w.end(), alpha.words[i].begin(), alpha.words[i].end());
    }
    return true;
  });
}

FockVector poly_calculus(const FockVector& p, Side side, const FockVector& v) {
  if (p.mult_dim() != 1) throw PreconditionError("polynomial must have r = 1");
  if (!(p.shape() == v.shape()))
    throw PreconditionError("polynomial/vector shape mismatch");
  FockVector out(v.shape(), v.mult_dim());
  for (const auto& [pk, pc] : p.terms()) {
    // p(S): S_{1,b_1}...S_{k,b_k} prefixes b_i; p~(R) with reversed words
    // appends b_i, since R_{~b} e_g = e_{g b}.
    FockVector part = side == Side::kLeft ? apply_left_word(pk.word, v)
                                          : apply_right_word(pk.word, v);
    out += part * pc;
  }
  return out;
}

FockVector poly_calculus_adjoint(const FockVector& p, Side side,
                                 const FockVector& v) {
  if (p.mult_dim() != 1) throw PreconditionError("polynomial must have r = 1");
  FockVector out(v.shape(), v.mult_dim());
  for (const auto& [pk, pc] : p.terms()) {
    for (const auto& [vk, vc] : v.terms()) {
      BasisKey key = vk;
      bool hit = true;
      for (std::size_t i = 0; i < pk.word.words.size() && hit; ++i) {
        const Word& b = pk.word.words[i];
        Word& w = key.word.words[i];
        if (b.size() > w.size()) {
          hit = false;
        } else if (side == Side::kLeft) {
          hit = std::equal(b.begin(), b.end(), w.begin());
          if (hit) w.erase(w.begin(), w.begin() + static_cast<long>(b.size()));
        } else {
          hit = std::equal(b.begin(), b.end(), w.end() - static_cast<long>(b.size()));
          if (hit) w.resize(w.size() - b.size());
        }
      }
      if (hit) out.add(key, pc * vc);
    }
  }
  return out;
}

Rational inner_product(const FockVector& u, const FockVector& v) {
  if (!(u.shape() == v.shape()) || u.mult_dim() != v.mult_dim())
    throw PreconditionError("inner_product: shape or multiplicity mismatch");
  Rational s = 0;
  const auto& a = u.terms();
  const auto& b = v.terms();
  auto it = a.begin();
  auto jt = b.begin();
  while (it != a.end() && jt != b.end()) {
    auto c = it->first <=> jt->first;
    if (c < 0) {
      ++it;
    } else if (c > 0) {
      ++jt;
    } else {
      s += it->second * jt->second;
      ++it;
      ++jt;
    }
  }
  return s;
}

std::string to_string(const FockVector& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : v.terms()) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << "*e[";
    for (std::size_t i = 0; i < key.word.words.size(); ++i) {
      if (i) os << '|';
      for (int letter : key.word.words[i]) os << 'g' << letter;
      if (key.word.words[i].empty()) os << '1';
    }
    os << ']';
    if (v.mult_dim() > 1) os << "@" << key.mult;
  }
  return os.str();
}

}  // namespace polyeuler

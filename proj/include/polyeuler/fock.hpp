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

// Truncated tensor products of full Fock spaces F^2(H_{n_1}) x ... x
// F^2(H_{n_k}) x E with exact rational coefficients.
//
// Conventions: factor indices are 0-based in the C++ API, letters are
// 1-based (letter j stands for the generator g_j), the empty word is the
// vacuum. Multiplicity indices run over 1..r.

#ifndef POLYEULER_FOCK_HPP_
#define POLYEULER_FOCK_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyeuler/rational.hpp"

namespace polyeuler {

/// Generator counts (n_1, ..., n_k) of the Fock factors.
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<int> n);

  std::size_t k() const { return n_.size(); }
  int n(std::size_t i) const { return n_[i]; }
  const std::vector<int>& counts() const { return n_; }

  /// Every n_i >= 2, the standing hypothesis for the Euler characteristic.
  bool euler_admissible() const;

  friend bool operator==(const Shape&, const Shape&) = default;

  std::string str() const;

 private:
  std::vector<int> n_;
};

/// Multidegree q in Z_+^k with the componentwise partial order.
class MultiDegree {
 public:
  MultiDegree() = default;
  explicit MultiDegree(std::vector<int> q) : q_(std::move(q)) {}
  static MultiDegree zero(std::size_t k) {
    return MultiDegree(std::vector<int>(k, 0));
  }
  static MultiDegree diagonal(std::size_t k, int m) {
    return MultiDegree(std::vector<int>(k, m));
  }

  std::size_t k() const { return q_.size(); }
  int operator[](std::size_t i) const { return q_[i]; }
  int& operator[](std::size_t i) { return q_[i]; }
  const std::vector<int>& values() const { return q_; }
  int total() const;

  /// Componentwise q <= p.
  bool leq(const MultiDegree& p) const;
  MultiDegree plus_unit(std::size_t i) const;
  MultiDegree operator+(const MultiDegree& o) const;
  MultiDegree operator-(const MultiDegree& o) const;

  /// Lexicographic; used only for deterministic container ordering.
  friend auto operator<=>(const MultiDegree&, const MultiDegree&) = default;
  friend bool operator==(const MultiDegree&, const MultiDegree&) = default;

  std::string str() const;

 private:
  std::vector<int> q_;
};

/// All multidegrees s with 0 <= s <= q, in lexicographic order.
std::vector<MultiDegree> box(const MultiDegree& q);

/// Letters of one free-semigroup word; empty = identity.
using Word = std::vector<int>;

/// Length-lexicographic comparison of words.
std::strong_ordering compare_words(const Word& a, const Word& b);

/// One word per factor.
struct MultiWord {
  std::vector<Word> words;

  MultiDegree degree() const;
  friend std::strong_ordering operator<=>(const MultiWord& a,
                                          const MultiWord& b);
  friend bool operator==(const MultiWord&, const MultiWord&) = default;
};

MultiWord vacuum_word(std::size_t k);

/// Basis vectors of multidegree exactly s, length-lex per factor and
/// lexicographic across factors (factor 0 most significant).
std::vector<MultiWord> enumerate_basis(const Shape& shape,
                                       const MultiDegree& s);

/// prod_i (1 + n_i + ... + n_i^{q_i}) = rank of P_{<=q}.
Integer dim_leq(const Shape& shape, const MultiDegree& q);

/// prod_i n_i^{s_i} = rank of P_s.
Integer dim_level(const Shape& shape, const MultiDegree& s);

/// Position of a multiword inside enumerate_basis(shape, degree).
std::size_t level_index(const Shape& shape, const MultiWord& w);
MultiWord level_word(const Shape& shape, const MultiDegree& s,
                     std::size_t index);

/// Key of one basis vector e_{alpha_1} x ... x e_{alpha_k} x delta_m.
struct BasisKey {
  MultiWord word;
  int mult = 1;

  friend std::strong_ordering operator<=>(const BasisKey& a,
                                          const BasisKey& b);
  friend bool operator==(const BasisKey&, const BasisKey&) = default;
};

/// Finitely supported vector of (tensor F^2(H_{n_i})) x E with E = Q^r.
class FockVector {
 public:
  using Terms = std::map<BasisKey, Rational>;

  FockVector() = default;
  FockVector(Shape shape, int mult_dim);

  static FockVector vacuum(const Shape& shape, int mult_dim = 1, int m = 1);
  static FockVector basis(const Shape& shape, const MultiWord& w,
                          int mult_dim = 1, int m = 1);

  const Shape& shape() const { return shape_; }
  int mult_dim() const { return mult_dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c to the coefficient of key; zero results are pruned.
  void add(const BasisKey& key, const Rational& c);
  Rational coeff(const BasisKey& key) const;

  FockVector& operator+=(const FockVector& o);
  FockVector& operator-=(const FockVector& o);
  FockVector& operator*=(const Rational& c);
  friend FockVector operator+(FockVector a, const FockVector& b) {
    return a += b;
  }
  friend FockVector operator-(FockVector a, const FockVector& b) {
    return a -= b;
  }
  friend FockVector operator*(FockVector a, const Rational& c) {
    return a *= c;
  }
  friend FockVector operator*(const Rational& c, FockVector a) {
    return a *= c;
  }
  friend bool operator==(const FockVector&, const FockVector&) = default;

  /// The common multidegree of the support, if there is one. The zero
  /// vector has none.
  std::optional<MultiDegree> homogeneous_degree() const;
  /// Componentwise maximum of the support degrees (zero if empty).
  MultiDegree max_degree() const;
  /// Pieces of fixed multidegree.
  std::map<MultiDegree, FockVector> split_by_degree() const;

  Rational norm2() const;

 private:
  void check_key(const BasisKey& key) const;

  Shape shape_;
  int mult_dim_ = 1;
  Terms terms_;
};

/// S_{i,j}: prepends letter j to the i-th word (tensored with I_E).
FockVector apply_left_creation(std::size_t i, int j, const FockVector& v);
/// R_{i,j}: appends letter j to the i-th word.
FockVector apply_right_creation(std::size_t i, int j, const FockVector& v);
/// S_{i,j}^*: strips a leading letter j from the i-th word, else 0.
FockVector apply_left_annihilation(std::size_t i, int j, const FockVector& v);
/// R_{i,j}^*: strips a trailing letter j from the i-th word, else 0.
FockVector apply_right_annihilation(std::size_t i, int j, const FockVector& v);

/// S_{1,alpha_1} ... S_{k,alpha_k} applied to v, i.e. prefixing each word.
FockVector apply_left_word(const MultiWord& alpha, const FockVector& v);
/// Appends each alpha_i to the i-th word (R_{1,~alpha_1}...R_{k,~alpha_k}).
FockVector apply_right_word(const MultiWord& alpha, const FockVector& v);

enum class Side { kLeft, kRight };

/// Polynomial calculus p(S) (left) or p~(R) (right, reversed words) of a
/// scalar-valued polynomial p applied to v.
FockVector poly_calculus(const FockVector& p, Side side, const FockVector& v);
/// Adjoint of poly_calculus(p, side, .).
FockVector poly_calculus_adjoint(const FockVector& p, Side side,
                                 const FockVector& v);

/// Standard Fock inner product (real rational scalars).
Rational inner_product(const FockVector& u, const FockVector& v);

std::string to_string(const FockVector& v);

}  // namespace polyeuler

#endif  // POLYEULER_FOCK_HPP_

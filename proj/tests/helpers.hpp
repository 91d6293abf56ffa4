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

// Shared fixtures and brute-force oracles for the tests. The oracles use
// only dense matrices and direct enumeration, never the sparse block code.

#ifndef POLYEULER_TESTS_HELPERS_HPP_
#define POLYEULER_TESTS_HELPERS_HPP_

#include <random>
#include <vector>

#include "polyeuler/fock.hpp"
#include "polyeuler/matrix.hpp"
#include "polyeuler/polyball.hpp"
#include "polyeuler/subspace.hpp"

namespace polyeuler::testing {

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

inline Word w(std::initializer_list<int> letters) { return Word(letters); }

/// Single factor basis vector e_word in F^2(H_n).
inline FockVector e1(int n, const Word& word) {
  return FockVector::basis(Shape({n}), MultiWord{{word}});
}

inline FockVector e2(const Shape& shape, const Word& a, const Word& b,
                     int mult_dim = 1, int m = 1) {
  return FockVector::basis(shape, MultiWord{{a, b}}, mult_dim, m);
}

inline Matrix mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) r.emplace_back(row);
  return Matrix::from_rows(r);
}

/// T_{1,1} = [[0,a],[0,0]], T_{1,2} = [[0,b],[0,0]] with a = b = 1/2.
inline PolyballTuple nilpotent_tuple() {
  Matrix t = mat({{0, q(1, 2)}, {0, 0}});
  return PolyballTuple(Shape({2}), 2, {{t, t}});
}

/// Scalar tuple (c, c) on C^1, one factor with two operators.
inline PolyballTuple scalar_tuple(const Rational& c) {
  return PolyballTuple(Shape({2}), 1, {{mat({{c}}), mat({{c}})}});
}

/// Dense oracle for dim M_s: rank of all S_alpha g (alpha of degree s - deg g)
/// written as rows over the basis of H_s x E.
inline std::size_t dense_block_dim(const Shape& shape, int mult_dim,
                                   const std::vector<FockVector>& gens,
                                   const MultiDegree& s) {
  std::vector<MultiWord> basis = enumerate_basis(shape, s);
  std::vector<std::vector<Rational>> rows;
  for (const auto& g : gens) {
    auto d = g.homogeneous_degree();
    if (!d || !d->leq(s)) continue;
    for (const MultiWord& alpha : enumerate_basis(shape, s - *d)) {
      FockVector v = apply_left_word(alpha, g);
      std::vector<Rational> row;
      for (const MultiWord& b : basis)
        for (int m = 1; m <= mult_dim; ++m)
          row.push_back(v.coeff(BasisKey{b, m}));
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return 0;
  return rank(Matrix::from_rows(rows));
}

/// Number of words of length len over n letters ending in one of suffixes.
inline long brute_suffix_count(int n, const std::vector<Word>& suffixes,
                               int len) {
  long count = 0;
  for (const MultiWord& mw : enumerate_basis(Shape({n}), MultiDegree({len}))) {
    const Word& word = mw.words[0];
    for (const Word& sfx : suffixes)
      if (sfx.size() <= word.size() &&
          std::equal(sfx.rbegin(), sfx.rend(), word.rbegin())) {
        ++count;
        break;
      }
  }
  return count;
}

/// Deterministic random rationals with small numerators and denominators.
class RationalSource {
 public:
  explicit RationalSource(unsigned seed) : gen_(seed) {}
  Rational next(int max_num = 4, int max_den = 4) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return make_rational(num(gen_), den(gen_));
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  Matrix matrix(std::size_t rows, std::size_t cols, int max_num = 4,
                int max_den = 4) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = next(max_num, max_den);
    return m;
  }
  std::mt19937& engine() { return gen_; }

 private:
  std::mt19937 gen_;
};

/// Random polyball tuple: k <= 2, dim_H <= 4, built from tensor products,
/// diagonal matrices or polynomials in one matrix so that factors commute,
/// then scaled down until it passes is_in_polyball.
inline PolyballTuple random_polyball_tuple(RationalSource& rs) {
  const int k = rs.integer(1, 2);
  const int style = rs.integer(0, 2);
  std::vector<int> n(static_cast<std::size_t>(k));
  for (auto& x : n) x = rs.integer(2, 3);
  std::vector<std::vector<Matrix>> ops(static_cast<std::size_t>(k));
  std::size_t dim = 0;
  if (k == 1) {
    dim = static_cast<std::size_t>(rs.integer(1, 4));
    for (int j = 0; j < n[0]; ++j) ops[0].push_back(rs.matrix(dim, dim));
  } else if (style == 0) {
    // I x A and B x I on C^a x C^b.
    const std::size_t a = static_cast<std::size_t>(rs.integer(1, 2));
    const std::size_t b = static_cast<std::size_t>(rs.integer(1, 2));
    dim = a * b;
    for (int j = 0; j < n[0]; ++j)
      ops[0].push_back(kron(rs.matrix(a, a), Matrix::identity(b)));
    for (int j = 0; j < n[1]; ++j)
      ops[1].push_back(kron(Matrix::identity(a), rs.matrix(b, b)));
  } else if (style == 1) {
    dim = static_cast<std::size_t>(rs.integer(1, 4));
    for (std::size_t i = 0; i < 2; ++i)
      for (int j = 0; j < n[i]; ++j) {
        Matrix d(dim, dim);
        for (std::size_t r = 0; r < dim; ++r) d(r, r) = rs.next();
        ops[i].push_back(d);
      }
  } else {
    // Polynomials c0 I + c1 X + c2 X^2 in a common matrix X.
    dim = static_cast<std::size_t>(rs.integer(2, 4));
    Matrix x = rs.matrix(dim, dim, 2, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (int j = 0; j < n[i]; ++j) {
        Matrix p = Matrix::identity(dim) * rs.next(2, 3) + x * rs.next(2, 3) +
                   (x * x) * rs.next(2, 3);
        ops[i].push_back(p);
      }
  }
  for (Rational scale = 1;; scale /= 2) {
    std::vector<std::vector<Matrix>> scaled = ops;
    for (auto& f : scaled)
      for (auto& m : f) m *= scale;
    PolyballTuple t(Shape(n), dim, scaled);
    if (is_in_polyball(t).member) return t;
  }
}

}  // namespace polyeuler::testing

#endif  // POLYEULER_TESTS_HELPERS_HPP_

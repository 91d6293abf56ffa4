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

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "polyeuler/subspace.hpp"

namespace polyeuler {
namespace {

using testing::e1;
using testing::e2;
using testing::q;
using testing::w;

const Shape kTwo({2});

FockVector psi_mix() {
  return q(3, 5) * e1(2, w({1})) + q(4, 5) * e1(2, w({2}));
}

GradedSubspace suffix_g1() {
  return GradedSubspace::complement_tensor({SuffixFactor{2, {w({1})}}});
}

TEST_CASE("vacuum generator gives the whole space") {
  auto m = GradedSubspace::from_generators(Shape({2, 3}), 1,
                                           {FockVector::vacuum(Shape({2, 3}))});
  for (const auto& s : box(MultiDegree({2, 2})))
    CHECK(Integer(m.block_dim(s)) == m.ambient_block_dim(s));
}

TEST_CASE("left shifts of e_g1 give words ending in g1") {
  auto m = GradedSubspace::from_generators(kTwo, 1, {e1(2, w({1}))});
  for (int len = 1; len <= 5; ++len) {
    for (const MultiWord& mw : enumerate_basis(kTwo, MultiDegree({len}))) {
      FockVector v = FockVector::basis(kTwo, mw);
      CHECK(m.contains(v) == (mw.words[0].back() == 1));
    }
  }
  CHECK(m.block_dim(MultiDegree({0})) == 0);
}

TEST_CASE("block dims of the mixed generator are 2^(s-1)") {
  auto m = GradedSubspace::from_generators(kTwo, 1, {psi_mix()});
  CHECK(m.block_dim(MultiDegree({0})) == 0);
  for (int s = 1; s <= 7; ++s)
    CHECK(m.block_dim(MultiDegree({s})) == (std::size_t{1} << (s - 1)));
}

TEST_CASE("suffix subspace block dims and dim_leq_sub") {
  auto m = suffix_g1();
  CHECK(m.block_dim(MultiDegree({0})) == 0);
  for (int s = 1; s <= 8; ++s)
    CHECK(m.block_dim(MultiDegree({s})) == (std::size_t{1} << (s - 1)));
  CHECK(m.dim_leq_sub(MultiDegree({3})) == 7);
}

TEST_CASE("full space dims") {
  CHECK(GradedSubspace::full(Shape({2, 2})).block_dim(MultiDegree({1, 1})) ==
        4);
  CHECK(GradedSubspace::full(kTwo).dim_leq_sub(MultiDegree({3})) == 15);
}

TEST_CASE("multiplicity directions are independent") {
  std::vector<FockVector> gens = {
      FockVector::basis(kTwo, MultiWord{{w({1})}}, 2, 1),
      FockVector::basis(kTwo, MultiWord{{w({1})}}, 2, 2)};
  auto m = GradedSubspace::from_generators(kTwo, 2, gens);
  CHECK(m.block_dim(MultiDegree({2})) == 4);
}

TEST_CASE("zero-generator subspace is zero") {
  auto m = GradedSubspace::from_generators(kTwo, 1, {});
  CHECK(m.dim_leq_sub(MultiDegree({4})) == 0);
}

TEST_CASE("generator validation") {
  CHECK_THROWS_AS(
      GradedSubspace::from_generators(kTwo, 1, {FockVector(kTwo, 1)}),
      PreconditionError);
  FockVector mixed = FockVector::vacuum(kTwo) + e1(2, w({1}));
  CHECK_THROWS_WITH_AS(GradedSubspace::from_generators(kTwo, 1, {mixed}),
                       doctest::Contains("generator 0"), PreconditionError);
  CHECK_THROWS_AS(GradedSubspace::from_generators(
                      kTwo, 1, {FockVector::vacuum(Shape({3}))}),
                  PreconditionError);
}

TEST_CASE("projection onto a rank-one block") {
  auto m = GradedSubspace::from_generators(kTwo, 1, {psi_mix()});
  FockVector p = m.project_block(MultiDegree({1}), e1(2, w({1})));
  CHECK(p == q(9, 25) * e1(2, w({1})) + q(12, 25) * e1(2, w({2})));
  CHECK(m.project_block(MultiDegree({1}), psi_mix()) == psi_mix());
  FockVector perp = q(4, 5) * e1(2, w({1})) - q(3, 5) * e1(2, w({2}));
  CHECK(m.project_block(MultiDegree({1}), perp).is_zero());
}

TEST_CASE("projections are idempotent, self-adjoint and orthogonal") {
  testing::RationalSource rs(7);
  const Shape shape({2, 2});
  auto m = GradedSubspace::from_generators(
      shape, 1,
      {e2(shape, w({1}), w({})) + e2(shape, w({2}), w({})) * q(1, 2),
       e2(shape, w({2}), w({1, 1}))});
  const MultiDegree s({2, 2});
  std::vector<MultiWord> basis = enumerate_basis(shape, s);
  for (int trial = 0; trial < 20; ++trial) {
    FockVector x(shape, 1), y(shape, 1);
    for (const auto& b : basis) {
      x.add(BasisKey{b, 1}, rs.next());
      y.add(BasisKey{b, 1}, rs.next());
    }
    FockVector px = m.project_block(s, x);
    FockVector py = m.project_block(s, y);
    CHECK(m.project_block(s, px) == px);
    CHECK(inner_product(px, y) == inner_product(x, py));
    for (const auto& b : m.block_basis(s))
      CHECK(inner_product(x - px, b) == 0);
  }
}

TEST_CASE("subspaces are invariant under left creation") {
  std::vector<GradedSubspace> subspaces = {
      GradedSubspace::from_generators(kTwo, 1, {psi_mix()}), suffix_g1(),
      GradedSubspace::complement_tensor(
          {SuffixFactor{2, {w({1})}}, SuffixFactor{3, {w({2, 3})}}})};
  for (const auto& m : subspaces) {
    const std::size_t k = m.shape().k();
    for (const auto& s : box(MultiDegree::diagonal(k, 2)))
      for (const auto& b : m.block_basis(s))
        for (std::size_t i = 0; i < k; ++i)
          for (int j = 1; j <= m.shape().n(i); ++j)
            CHECK(m.contains(apply_left_creation(i, j, b)));
  }
}

TEST_CASE("block dims agree with a dense rank oracle") {
  testing::RationalSource rs(11);
  const Shape shape({2, 2});
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<FockVector> gens;
    const int count = rs.integer(1, 3);
    for (int g = 0; g < count; ++g) {
      MultiDegree d({rs.integer(0, 1), rs.integer(0, 1)});
      FockVector v(shape, 1);
      for (const auto& b : enumerate_basis(shape, d))
        if (rs.integer(0, 1)) v.add(BasisKey{b, 1}, rs.next());
      if (v.is_zero()) v.add(BasisKey{enumerate_basis(shape, d)[0], 1}, 1);
      gens.push_back(v);
    }
    auto m = GradedSubspace::from_generators(shape, 1, gens);
    for (const auto& s : box(MultiDegree({3, 2})))
      CHECK(m.block_dim(s) == testing::dense_block_dim(shape, 1, gens, s));
  }
}

TEST_CASE("complement tensor block dims match brute counts") {
  SuffixFactor f1{2, {w({1}), w({2, 1})}};
  SuffixFactor f2{3, {w({1, 2}), w({3})}};
  auto m = GradedSubspace::complement_tensor({f1, f2});
  for (const auto& s : box(MultiDegree({4, 3}))) {
    const long in1 = testing::brute_suffix_count(2, f1.suffixes, s[0]);
    const long in2 = testing::brute_suffix_count(3, f2.suffixes, s[1]);
    const long a1 = 1L << s[0];
    long a2 = 1;
    for (int i = 0; i < s[1]; ++i) a2 *= 3;
    const long expected = a1 * a2 - (a1 - in1) * (a2 - in2);
    CHECK(Integer(m.block_dim(s)) == expected);
    CHECK(m.block_trace(s) == Rational(expected));
  }
  auto g = m.as_generated();
  for (const auto& s : box(MultiDegree({3, 2})))
    CHECK(g.block_dim(s) == m.block_dim(s));
}

TEST_CASE("trace_leq equals dim_leq_sub") {
  auto m = GradedSubspace::from_generators(kTwo, 1, {psi_mix()});
  for (int qq = 0; qq <= 5; ++qq)
    CHECK(m.trace_leq(MultiDegree({qq})) ==
          Rational(m.dim_leq_sub(MultiDegree({qq}))));
}

TEST_CASE("defect of the full space is the vacuum projection") {
  auto m = GradedSubspace::full(Shape({2, 2}));
  const Shape shape({2, 2});
  CHECK(m.defect_apply(FockVector::vacuum(shape)) ==
        FockVector::vacuum(shape));
  CHECK(m.defect_apply(e2(shape, w({1}), w({2}))).is_zero());
}

TEST_CASE("defect of a rank-one generated subspace") {
  auto m = GradedSubspace::from_generators(kTwo, 1, {psi_mix()});
  testing::RationalSource rs(3);
  for (int trial = 0; trial < 10; ++trial) {
    FockVector xi(kTwo, 1);
    for (const auto& s : box(MultiDegree({2})))
      for (const auto& b : enumerate_basis(kTwo, s))
        xi.add(BasisKey{b, 1}, rs.next());
    CHECK(m.defect_apply(xi, MultiDegree({2})) ==
          inner_product(xi, psi_mix()) * psi_mix());
  }
  FockVector perp = q(4, 5) * e1(2, w({1})) - q(3, 5) * e1(2, w({2})) +
                    FockVector::vacuum(kTwo) + e1(2, w({1, 2}));
  CHECK(m.defect_apply(perp, MultiDegree({2})).is_zero());
}

TEST_CASE("beurling checks") {
  SUBCASE("single letter") {
    auto r = beurling_verify({e1(2, w({1}))}, MultiDegree({4}));
    CHECK(r.pass());
  }
  SUBCASE("non-homogeneous polynomial fails isometry") {
    FockVector psi = q(3, 5) * FockVector::vacuum(kTwo) + q(4, 5) * e1(2, w({1}));
    auto r = beurling_verify({psi}, MultiDegree({3}));
    CHECK_FALSE(r.isometries);
    CHECK_FALSE(r.pass());
    CHECK(r.counterexample.find("12/25") != std::string::npos);
  }
  SUBCASE("both letters exhaust degree >= 1") {
    auto r = beurling_verify({e1(2, w({1})), e1(2, w({2}))}, MultiDegree({4}));
    CHECK(r.pass());
    auto m = GradedSubspace::from_generators(kTwo, 1,
                                             {e1(2, w({1})), e1(2, w({2}))});
    CHECK(m.block_dim(MultiDegree({0})) == 0);
    for (int s = 1; s <= 4; ++s)
      CHECK(Integer(m.block_dim(MultiDegree({s}))) == (1L << s));
  }
}

TEST_CASE("numeric mode matches exact dims for graded generators") {
  std::vector<FockVector> gens = {psi_mix()};
  auto m = GradedSubspace::from_generators(kTwo, 1, gens);
  auto r = numeric_mode_trace(gens, MultiDegree({3}), MultiDegree({6}));
  REQUIRE(r.values.size() == r.cutoffs.size());
  REQUIRE(!r.values.empty());
  const double exact = m.dim_leq_sub(MultiDegree({3})).get_d();
  for (double v : r.values) CHECK(std::abs(v - exact) < 1e-9);
}

TEST_CASE("numeric mode grows for a non-homogeneous generator") {
  std::vector<FockVector> gens = {FockVector::vacuum(kTwo) + e1(2, w({1}))};
  auto r = numeric_mode_trace(gens, MultiDegree({2}), MultiDegree({10}));
  REQUIRE(r.values.size() >= 7);
  for (std::size_t i = 1; i < r.values.size(); ++i)
    CHECK(r.values[i] >= r.values[i - 1] - 1e-9);
  CHECK(r.values.back() > r.values.front());
  CHECK(r.values.back() <= 7.0 + 1e-9);
  CHECK(r.diagnostic.find("approximate") != std::string::npos);
}

TEST_CASE("numeric mode with no generators is zero") {
  auto r = numeric_mode_trace({}, MultiDegree({2}), MultiDegree({5}));
  REQUIRE(!r.values.empty());
  for (double v : r.values) CHECK(v == 0.0);
}

}  // namespace
}  // namespace polyeuler

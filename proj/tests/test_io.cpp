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

#include "doctest.h"
#include "helpers.hpp"
#include "polyeuler/io.hpp"

namespace polyeuler {
namespace {

using testing::e1;
using testing::nilpotent_tuple;
using testing::q;
using testing::w;

void check_sequences_equal(const InvariantSequence& a,
                           const InvariantSequence& b) {
  CHECK(a.kind == b.kind);
  CHECK(a.source == b.source);
  CHECK(a.shape == b.shape);
  CHECK(a.truncated_expansion == b.truncated_expansion);
  CHECK(a.failures == b.failures);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].q == b.entries[i].q);
    CHECK(a.entries[i].numerator == b.entries[i].numerator);
    CHECK(a.entries[i].denominator == b.entries[i].denominator);
    CHECK(a.entries[i].value == b.entries[i].value);
    CHECK(a.entries[i].level_value == b.entries[i].level_value);
  }
  CHECK(a.limit.status == b.limit.status);
  CHECK(a.limit.last_value == b.limit.last_value);
  CHECK(a.limit.last_delta == b.limit.last_delta);
  CHECK(a.limit.chain == b.limit.chain);
  CHECK(a.limit.note == b.limit.note);
}

TEST_CASE("rationals are strings") {
  CHECK(rational_to_json(q(-3, 4)) == Json("-3/4"));
  CHECK(rational_to_json(q(2)) == Json("2"));
  CHECK(rational_from_json(Json("5/8")) == q(5, 8));
  CHECK(rational_from_json(Json(3)) == 3);
  CHECK_THROWS_AS(rational_from_json(Json(0.5)), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), Error);
}

TEST_CASE("vectors and matrices round-trip") {
  FockVector v = q(3, 5) * e1(2, w({1})) + q(4, 5) * e1(2, w({2, 1}));
  CHECK(fock_vector_from_json(to_json(v)) == v);
  Matrix m = testing::mat({{1, q(1, 2)}, {q(-2, 3), 0}});
  CHECK(matrix_from_json(to_json(m)) == m);
}

TEST_CASE("tuples round-trip with grading") {
  Grading g{{MultiDegree({1}), MultiDegree({0})}};
  Json j = to_json(nilpotent_tuple(), g);
  TupleSource back = tuple_from_json(j);
  CHECK(back.tuple.ops() == nilpotent_tuple().ops());
  REQUIRE(back.grading);
  CHECK(back.grading->degree_of == g.degree_of);
  Json flat = Json::parse(
      R"({"shape":[2],"dim":1,"ops":[[[["1/2"]],[["1/3"]]]],"degrees":[[0]]})");
  TupleSource t = tuple_from_json(flat);
  CHECK(t.tuple.op(0, 1)(0, 0) == q(1, 3));
  CHECK(t.grading);
}

TEST_CASE("subspaces round-trip") {
  std::vector<GradedSubspace> ms = {
      GradedSubspace::full(Shape({2, 2}), 2),
      GradedSubspace::from_generators(Shape({2}), 1,
                                      {q(3, 5) * e1(2, w({1})) +
                                       q(4, 5) * e1(2, w({2}))}),
      GradedSubspace::complement_tensor(
          {SuffixFactor{2, {w({1, 1}), w({1, 2, 2})}}, SuffixFactor{3, {}}})};
  for (const auto& m : ms) {
    GradedSubspace back = subspace_from_json(to_json(m));
    CHECK(back.kind() == m.kind());
    CHECK(back.shape() == m.shape());
    CHECK(back.mult_dim() == m.mult_dim());
    CHECK(back.generators() == m.generators());
    for (const auto& s : box(MultiDegree::diagonal(m.shape().k(), 3)))
      CHECK(back.block_dim(s) == m.block_dim(s));
  }
  Json factors_only = Json::parse(R"({"factors":[{"n":2,"suffixes":[[1]]}]})");
  CHECK(subspace_from_json(factors_only).block_dim(MultiDegree({3})) == 4);
  CHECK_THROWS_AS(subspace_from_json(Json::parse(R"({"kind":"generated"})")),
                  ParseError);
}

TEST_CASE("construction specs") {
  ConstructionSpec spec = parse_construct_arg("t=5/8,omega=3/4,max_terms=12,mult=2",
                                              {2, 2});
  CHECK(spec.t == q(5, 8));
  REQUIRE(spec.omega);
  CHECK(*spec.omega == q(3, 4));
  CHECK(spec.max_terms == 12);
  CHECK(spec.mult_dim == 2);
  CHECK(spec.shape == std::vector<int>{2, 2});
  ConstructionSpec back = construction_spec_from_json(to_json(spec));
  CHECK(back.t == spec.t);
  CHECK(*back.omega == *spec.omega);
  CHECK(back.shape == spec.shape);
  CHECK_THROWS_AS(parse_construct_arg("t", {2}), ParseError);
  CHECK_THROWS_AS(parse_construct_arg("t=1/2,colour=red", {2}), ParseError);
}

TEST_CASE("reports round-trip") {
  auto chi = chi_sequence(TupleSource{nilpotent_tuple(), {}}, MultiDegree({4}));
  check_sequences_equal(sequence_from_json(to_json(chi)), chi);
  auto cm = chi_sequence(
      CoinvariantSource{GradedSubspace::complement_tensor(
          {SuffixFactor{2, {w({1})}}, SuffixFactor{2, {}}})},
      MultiDegree({2, 3}), EvalOptions{1, true});
  check_sequences_equal(sequence_from_json(to_json(cm)), cm);
  auto simplex =
      curv_simplex_sequence(TupleSource{nilpotent_tuple(), {}}, 3);
  check_sequences_equal(sequence_from_json(to_json(simplex)), simplex);

  CheckReport r;
  r.name = "x";
  r.details = {"a", "b"};
  r.fail("broken");
  CheckReport rb = check_report_from_json(to_json(r));
  CHECK(rb.name == r.name);
  CHECK(rb.pass == r.pass);
  CHECK(rb.details == r.details);
  CHECK(rb.failure == r.failure);
}

TEST_CASE("csv layout") {
  auto chi = chi_sequence(TupleSource{nilpotent_tuple(), {}}, MultiDegree({2}));
  const std::string csv = to_csv(chi);
  CHECK(csv.rfind("q1,numerator,denominator,value,", 0) == 0);
  CHECK(csv.find("\n2,2,7,2/7,") != std::string::npos);
  CHECK(to_csv(chi) == csv);
}

TEST_CASE("numeric reports are labelled approximate") {
  auto r = numeric_mode_trace({e1(2, w({1}))}, MultiDegree({1}),
                              MultiDegree({2}));
  Json j = to_json(r);
  CHECK(j.at("approximate") == true);
  CHECK(j.at("cutoff_schedule").size() == r.cutoffs.size());
}

TEST_CASE("integer lists") {
  CHECK(parse_int_list("2,2") == std::vector<int>{2, 2});
  CHECK(parse_int_list("[3, 4]") == std::vector<int>{3, 4});
  CHECK(parse_int_list("6") == std::vector<int>{6});
  CHECK_THROWS_AS(parse_int_list("2,x"), ParseError);
}

}  // namespace
}  // namespace polyeuler

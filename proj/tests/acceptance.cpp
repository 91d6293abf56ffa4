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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is
// nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "polyeuler/constructions.hpp"
#include "polyeuler/invariants.hpp"

namespace polyeuler {
namespace {

using testing::e1;
using testing::q;
using testing::w;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& msg) {
    if (pass) detail = msg;
    pass = false;
  }
};

// Suite of random polyball tuples shared by criteria 3 to 5.
std::vector<PolyballTuple> tuple_suite() {
  static const std::vector<PolyballTuple> suite = [] {
    testing::RationalSource rs(20260101);
    std::vector<PolyballTuple> out;
    for (int i = 0; i < 24; ++i) out.push_back(testing::random_polyball_tuple(rs));
    return out;
  }();
  return suite;
}

MultiDegree suite_qmax(const PolyballTuple& t) {
  return MultiDegree::diagonal(t.shape().k(), 3);
}

Outcome criterion1() {
  Outcome o;
  RestrictionSource src{GradedSubspace::full(Shape({2, 2}))};
  const MultiDegree qmax({6, 6});
  auto chi = chi_sequence(src, qmax);
  auto curv = curv_sequence(src, qmax);
  for (const auto* seq : {&chi, &curv})
    for (const auto& e : seq->entries)
      if (e.value != 1)
        o.fail(to_string(seq->kind) + " at q=" + e.q.str() + " is " +
               to_string(e.value));
  if (!chi.failures.empty()) o.fail(chi.failures.front());
  o.detail = o.pass ? "chi = curv = 1 at all 49 truncations" : o.detail;
  return o;
}

// Greedy base-2 digits of 1 - t computed independently of expand().
std::vector<std::pair<int, int>> digits_of(const Rational& t) {
  std::vector<std::pair<int, int>> out;
  Rational rest = 1 - t;
  for (int k = 1; rest > 0 && k < 64; ++k) {
    const Rational unit = Rational(1) / Rational(ipow(2, k));
    if (rest >= unit) {
      out.emplace_back(k, 1);
      rest -= unit;
    }
  }
  return out;
}

Outcome criterion2() {
  Outcome o;
  const std::vector<Rational> ts = {q(1, 2), q(3, 8), q(5, 8), q(3, 4),
                                    q(15, 16)};
  for (const Rational& t : ts) {
    for (const Shape& shape : {Shape({2}), Shape({2, 2})}) {
      Construction c = build_M_t(shape, t);
      const MultiDegree qmax =
          shape.k() == 1 ? MultiDegree({12}) : MultiDegree({12, 2});
      auto seq = chi_sequence(CoinvariantSource{c.subspace}, qmax);
      const auto digits = digits_of(t);
      for (const auto& e : seq.entries) {
        Rational expected = 1;
        for (const auto& [k, d] : digits)
          if (k <= e.q[0]) expected -= Rational(d) / Rational(ipow(2, k));
        if (e.level_value != expected)
          o.fail("t=" + to_string(t) + " q=" + e.q.str() + ": level " +
                 to_string(e.level_value) + " != " + to_string(expected));
      }
      const MultiDegree top = shape.k() == 1 ? MultiDegree({12})
                                             : MultiDegree({12, 2});
      const Rational gap = abs(seq.find(top)->value - t);
      if (!(gap < Rational(2) / Rational(ipow(2, 12))))
        o.fail("t=" + to_string(t) + ": cumulative gap " + to_string(gap));
    }
  }
  if (o.pass) o.detail = "5 values of t, levels <= 12, shapes (2) and (2,2)";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& t : tuple_suite()) {
    if (!is_in_polyball(t).member) o.fail("suite tuple outside the polyball");
    for (const auto& qq : box(suite_qmax(t))) {
      if (berezin_gram(t, qq) != phi_power_formula(t, qq))
        o.fail("KPK mismatch at q=" + qq.str());
      ++checked;
    }
  }
  if (o.pass)
    o.detail = std::to_string(tuple_suite().size()) + " tuples, " +
               std::to_string(checked) + " truncations";
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (const auto& t : tuple_suite()) {
    const DefectData d = defect_data(t);
    for (const auto& qq : box(suite_qmax(t))) {
      const std::size_t a = span_dim(t, d.defect_basis, qq);
      const std::size_t b = rank(berezin_gram(t, qq));
      const std::size_t c = rank(phi_power_formula(t, qq));
      if (a != b || b != c)
        o.fail("q=" + qq.str() + ": span " + std::to_string(a) + ", gram " +
               std::to_string(b) + ", formula " + std::to_string(c));
    }
  }
  if (o.pass) o.detail = "span_dim = rank(gram) = rank(formula) on the suite";
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (const auto& t : tuple_suite()) {
    CheckReport r = inequality_check(t, suite_qmax(t));
    if (!r.pass) o.fail(r.failure);
  }
  if (o.pass) o.detail = "curv_q <= chi_q <= rank Delta on the suite";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const Shape two({2}), twotwo({2, 2});
  std::vector<std::pair<std::string, GradedSubspace>> cases;
  cases.emplace_back("M_1(1/2)", build_Mi(expand(q(1, 2), 2, 64)));
  cases.emplace_back("M(5/8)", build_M_t(twotwo, q(5, 8)).subspace);
  cases.emplace_back(
      "multiplicity 2",
      GradedSubspace::from_generators(
          two, 2,
          {FockVector::basis(two, MultiWord{{w({1})}}, 2, 1),
           FockVector::basis(two, MultiWord{{w({2})}}, 2, 2)}));
  cases.emplace_back(
      "two generators of degree (1,1)",
      GradedSubspace::from_generators(
          twotwo, 1,
          {FockVector::basis(twotwo, MultiWord{{w({1}), w({1})}}) +
               FockVector::basis(twotwo, MultiWord{{w({2}), w({2})}}),
           FockVector::basis(twotwo, MultiWord{{w({1}), w({2})}}) * q(1, 2) -
               FockVector::basis(twotwo, MultiWord{{w({2}), w({1})}})}));
  cases.emplace_back("M^(1/2)(3/8)",
                     build_M_omega_t(twotwo, q(3, 8), q(1, 2)).subspace);
  for (const auto& [name, m] : cases) {
    const MultiDegree qmax = MultiDegree::diagonal(m.shape().k(), 6);
    CheckReport r = gbc_check(CoinvariantSource{m}, qmax, EvalOptions{4, false});
    if (!r.pass) o.fail(name + ": " + r.failure);
  }
  if (o.pass)
    o.detail = std::to_string(cases.size()) +
               " graded subspaces, trace = rank at every q <= (6,6)";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto& suite = tuple_suite();
  int sums = 0, products = 0;
  for (std::size_t i = 0; i + 1 < suite.size() && sums < 6; ++i)
    for (std::size_t j = i + 1; j < suite.size() && sums < 6; ++j)
      if (suite[i].shape() == suite[j].shape() &&
          suite[i].dim() + suite[j].dim() <= 6) {
        CheckReport r = additivity_check(suite[i], suite[j],
                                         MultiDegree::diagonal(suite[i].shape().k(), 2));
        if (!r.pass) o.fail("additivity: " + r.failure);
        ++sums;
      }
  for (std::size_t i = 0; i + 1 < suite.size() && products < 5; ++i) {
    const auto& a = suite[i];
    const auto& b = suite[i + 1];
    if (a.shape().k() + b.shape().k() > 3 || a.dim() * b.dim() > 6) continue;
    CheckReport r = multiplicativity_check(
        {a, b}, {MultiDegree::diagonal(a.shape().k(), 2),
                 MultiDegree::diagonal(b.shape().k(), 2)});
    if (!r.pass) o.fail("multiplicativity: " + r.failure);
    ++products;
  }
  const std::vector<std::vector<GradedSubspace>> tensors = {
      {build_Mi(expand(q(1, 2), 2, 64)), build_Mi(expand(q(1, 2), 2, 64))},
      {build_Mi(expand(q(5, 8), 2, 64)), build_Mi(expand(q(1, 4), 2, 64))},
      {build_Mi(expand(q(1, 3), 3, 64)), build_Mi(expand(q(3, 4), 2, 64))},
      {build_M_t(Shape({2, 2}), q(3, 8)).subspace,
       build_Mi(expand(q(1, 2), 2, 64))},
      {GradedSubspace::from_generators(Shape({2}), 1,
                                       {q(3, 5) * e1(2, w({1})) +
                                        q(4, 5) * e1(2, w({2}))}),
       build_Mi(expand(q(1, 2), 2, 64))},
  };
  for (const auto& ms : tensors) {
    std::vector<MultiDegree> qs;
    for (const auto& m : ms) qs.push_back(MultiDegree::diagonal(m.shape().k(), 3));
    CheckReport r = coinvariant_multiplicativity_check(ms, qs);
    if (!r.pass) o.fail("coinvariant tensor: " + r.failure);
    ++products;
  }
  if (sums < 5) o.fail("only " + std::to_string(sums) + " direct sums found");
  if (o.pass)
    o.detail = std::to_string(sums) + " direct sums, " +
               std::to_string(products) + " products";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const PolyballTuple nil = testing::nilpotent_tuple();
  Matrix first(2, 1), second(2, 1);
  first(0, 0) = 1;
  second(1, 0) = 1;
  const PolyballTuple ds = direct_sum(nil, testing::scalar_tuple(q(1, 2)));
  Matrix summand(3, 2);
  summand(0, 0) = 1;
  summand(1, 1) = 1;
  Matrix tail(3, 1);
  tail(2, 0) = 1;
  struct Pair {
    std::string name;
    const PolyballTuple* t;
    Matrix basis;
    PerturbationForm form;
  };
  const std::vector<Pair> pairs = {
      {"nilpotent, invariant span(e1)", &nil, first,
       PerturbationForm::kInvariant},
      {"nilpotent, co-invariant span(e2)", &nil, second,
       PerturbationForm::kCoinvariant},
      {"direct sum, first summand", &ds, summand, PerturbationForm::kInvariant},
      {"direct sum, co-invariant first summand", &ds, summand,
       PerturbationForm::kCoinvariant},
      {"direct sum, invariant second summand", &ds, tail,
       PerturbationForm::kInvariant},
  };
  for (const auto& p : pairs) {
    try {
      CheckReport r = perturbation_check(*p.t, p.basis, p.form, MultiDegree({4}));
      if (!r.pass) o.fail(p.name + ": " + r.failure);
    } catch (const Error& e) {
      o.fail(p.name + ": " + e.what());
    }
  }
  if (o.pass) o.detail = std::to_string(pairs.size()) + " (T, M) pairs, both forms";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const Shape two({2});
  const std::vector<std::vector<FockVector>> examples = {
      {q(3, 5) * e1(2, w({1})) + q(4, 5) * e1(2, w({2}))},
      {e1(2, w({1}))},
      {e1(2, w({1})), e1(2, w({2}))},
      {q(3, 5) * e1(2, w({1, 1})) + q(4, 5) * e1(2, w({2, 1})),
       e1(2, w({1, 2}))},
  };
  for (const auto& psis : examples) {
    BeurlingReport r = beurling_verify(psis, MultiDegree({5}));
    if (!r.pass()) o.fail("beurling: " + r.counterexample);
    auto m = GradedSubspace::from_generators(two, 1, psis);
    auto chi = chi_sequence(RestrictionSource{m}, MultiDegree({5}));
    for (const auto& e : chi.entries)
      if (e.value != Rational(static_cast<long>(psis.size())))
        o.fail("restriction chi at q=" + e.q.str() + " is " +
               to_string(e.value));
  }
  if (o.pass)
    o.detail = std::to_string(examples.size()) +
               " generator sets on H_{<=5}; chi(restriction) = #generators";
  return o;
}

Outcome criterion10() {
  Outcome o;
  // Shift laws on the basis of H_{<=(2,2)} for shape (2,3).
  const Shape shape({2, 3});
  for (const auto& s : box(MultiDegree({2, 2})))
    for (const auto& b : enumerate_basis(shape, s)) {
      const FockVector v = FockVector::basis(shape, b);
      for (std::size_t i = 0; i < 2; ++i)
        for (int j = 1; j <= shape.n(i); ++j) {
          for (int l = 1; l <= shape.n(i); ++l) {
            FockVector back =
                apply_left_annihilation(i, l, apply_left_creation(i, j, v));
            if (back != (j == l ? v : FockVector(shape, 1)))
              o.fail("left isometry law fails at " + to_string(v));
            FockVector rback =
                apply_right_annihilation(i, l, apply_right_creation(i, j, v));
            if (rback != (j == l ? v : FockVector(shape, 1)))
              o.fail("right isometry law fails at " + to_string(v));
          }
          const std::size_t other = 1 - i;
          for (int l = 1; l <= shape.n(other); ++l)
            if (apply_left_creation(i, j, apply_left_creation(other, l, v)) !=
                apply_left_creation(other, l, apply_left_creation(i, j, v)))
              o.fail("cross-factor commutation fails at " + to_string(v));
        }
    }
  // Grading invariance.
  try {
    verify_grading(testing::nilpotent_tuple(),
                   Grading{{MultiDegree({1}), MultiDegree({0})}});
  } catch (const Error& e) {
    o.fail(std::string("grading: ") + e.what());
  }
  bool rejected = false;
  try {
    verify_grading(testing::nilpotent_tuple(),
                   Grading{{MultiDegree({0}), MultiDegree({1})}});
  } catch (const PreconditionError&) {
    rejected = true;
  }
  if (!rejected) o.fail("grading: a wrong grading was accepted");
  // Suffix-freeness of every exact expansion with at most 6 digits.
  for (int n = 2; n <= 3; ++n) {
    const long denom = n == 2 ? 64 : 729;
    for (long a = 1; a < denom; ++a) {
      auto words = build_Ji(expand(Rational(a) / Rational(denom), n, 64));
      for (std::size_t x = 0; x < words.size(); ++x)
        for (std::size_t y = 0; y < words.size(); ++y) {
          const Word& s = words[x];
          const Word& t = words[y];
          if (x != y && s.size() <= t.size() &&
              std::equal(s.rbegin(), s.rend(), t.rbegin()))
            o.fail("suffix-freeness fails for " + std::to_string(a) + "/" +
                   std::to_string(denom));
        }
    }
  }
  // Determinism under parallelism.
  CoinvariantSource src{GradedSubspace::from_generators(
      Shape({2, 2}), 1,
      {FockVector::basis(Shape({2, 2}), MultiWord{{w({1}), w({2})}}),
       FockVector::basis(Shape({2, 2}), MultiWord{{w({2, 1}), w({})}})})};
  RestrictionSource rsrc{src.subspace};
  for (const InvariantSource& s : {InvariantSource(src), InvariantSource(rsrc)}) {
    auto a = chi_sequence(s, MultiDegree({3, 3}), EvalOptions{1, false});
    auto b = chi_sequence(s, MultiDegree({3, 3}), EvalOptions{4, false});
    for (std::size_t i = 0; i < a.entries.size(); ++i)
      if (a.entries[i].numerator != b.entries[i].numerator)
        o.fail("worker count changed the result at q=" + a.entries[i].q.str());
  }
  if (o.pass)
    o.detail = "shift laws, grading checks, suffix-freeness, determinism";
  return o;
}

}  // namespace
}  // namespace polyeuler

int main() {
  using polyeuler::Outcome;
  struct Criterion {
    int id;
    std::function<Outcome()> run;
    double limit_seconds;  // 0 means no limit
  };
  const std::vector<Criterion> criteria = {
      {1, polyeuler::criterion1, 10}, {2, polyeuler::criterion2, 30},
      {3, polyeuler::criterion3, 60}, {4, polyeuler::criterion4, 0},
      {5, polyeuler::criterion5, 0},  {6, polyeuler::criterion6, 0},
      {7, polyeuler::criterion7, 0},  {8, polyeuler::criterion8, 0},
      {9, polyeuler::criterion9, 0},  {10, polyeuler::criterion10, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      std::ostringstream os;
      os << "runtime " << secs << " s exceeds " << c.limit_seconds << " s";
      o.fail(os.str());
    }
    std::printf("criterion %d: %s (%.2f s) %s\n", c.id,
                o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

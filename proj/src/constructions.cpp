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

#include "polyeuler/constructions.hpp"

namespace polyeuler {

Rational ExpansionSpec::partial_sum() const {
  Rational s = 0;
  for (const auto& term : terms)
    s += Rational(term.digit) / Rational(ipow(n, term.position));
  return s;
}

Rational ExpansionSpec::level_ratio(int level) const {
  Rational s = 1;
  for (const auto& term : terms)
    if (term.position <= level)
      s -= Rational(term.digit) / Rational(ipow(n, term.position));
  return s;
}

ExpansionSpec expand(const Rational& t, int n, int max_terms) {
  if (t < 0 || t >= 1)
    throw PreconditionError("expand: t = " + to_string(t) +
                            " must lie in [0, 1)");
  if (n < 2) throw PreconditionError("expand: n must be >= 2");
  if (max_terms < 1) throw PreconditionError("expand: max_terms must be >= 1");
  ExpansionSpec spec;
  spec.n = n;
  spec.t = t;
  // x is the tail still to be expanded, scaled so its next digit is
  // floor(n x), capped at n - 1 so that 1 - t = 1 yields the repeating form.
  Rational x = 1 - t;
  for (int position = 1;
       sgn(x) != 0 && static_cast<int>(spec.terms.size()) < max_terms;
       ++position) {
    x *= n;
    Integer digit = x.get_num() / x.get_den();
    if (digit > n - 1) digit = n - 1;
    x -= digit;
    if (digit > 0)
      spec.terms.push_back({position, static_cast<int>(digit.get_si())});
  }
  spec.exact = spec.partial_sum() == 1 - t;
  return spec;
}

std::vector<Word> build_Ji(const ExpansionSpec& spec) {
  std::vector<Word> out;
  int previous = 0;
  for (const auto& term : spec.terms) {
    for (int m = 1; m <= term.digit; ++m) {
      Word w(static_cast<std::size_t>(term.position - previous), m);
      w.insert(w.end(), static_cast<std::size_t>(previous), spec.n);
      out.push_back(std::move(w));
    }
    previous = term.position;
  }
  return out;
}

GradedSubspace build_Mi(const ExpansionSpec& spec, int mult_dim) {
  return GradedSubspace::complement_tensor(
      {SuffixFactor{spec.n, build_Ji(spec)}}, mult_dim);
}

namespace {

std::vector<SuffixFactor> empty_factors(const Shape& shape) {
  std::vector<SuffixFactor> factors;
  for (std::size_t i = 0; i < shape.k(); ++i)
    factors.push_back(SuffixFactor{shape.n(i), {}});
  return factors;
}

void require_admissible(const Shape& shape) {
  if (shape.k() == 0) throw PreconditionError("shape must have a factor");
  if (!shape.euler_admissible())
    throw PreconditionError("constructions need n_i >= 2 for every factor");
}

}  // namespace

Construction build_M_t(const Shape& shape, const Rational& t, int max_terms,
                       int mult_dim) {
  require_admissible(shape);
  if (t < 0 || t > 1)
    throw PreconditionError("build_M_t: t = " + to_string(t) +
                            " must lie in [0, 1]");
  std::vector<SuffixFactor> factors = empty_factors(shape);
  Construction c{GradedSubspace::full(shape, mult_dim), {}, true, ""};
  if (t != 1) {
    ExpansionSpec spec = expand(t, shape.n(0), max_terms);
    factors[0].suffixes = build_Ji(spec);
    c.exact = spec.exact;
    c.expansions.push_back(std::move(spec));
  }
  c.subspace = GradedSubspace::complement_tensor(std::move(factors), mult_dim);
  c.description = "M(t) with t=" + to_string(t) + " on shape " + shape.str();
  return c;
}

Construction build_M_omega_t(const Shape& shape, const Rational& t,
                             const Rational& omega, int max_terms,
                             int mult_dim) {
  require_admissible(shape);
  if (shape.k() < 2)
    throw PreconditionError(
        "build_M_omega_t needs k >= 2 (two nontrivial factors)");
  if (!(0 < t && t < omega && omega < 1))
    throw PreconditionError("build_M_omega_t needs 0 < t < omega < 1");
  std::vector<SuffixFactor> factors = empty_factors(shape);
  ExpansionSpec first = expand(omega, shape.n(0), max_terms);
  ExpansionSpec second = expand(t / omega, shape.n(1), max_terms);
  factors[0].suffixes = build_Ji(first);
  factors[1].suffixes = build_Ji(second);
  Construction c{GradedSubspace::complement_tensor(std::move(factors), mult_dim),
                 {first, second},
                 first.exact && second.exact,
                 "M^(omega)(t) with t=" + to_string(t) +
                     ", omega=" + to_string(omega) + " on shape " +
                     shape.str()};
  return c;
}

Construction build(const ConstructionSpec& spec) {
  const Shape shape(spec.shape);
  if (spec.omega)
    return build_M_omega_t(shape, spec.t, *spec.omega, spec.max_terms,
                           spec.mult_dim);
  return build_M_t(shape, spec.t, spec.max_terms, spec.mult_dim);
}

}  // namespace polyeuler

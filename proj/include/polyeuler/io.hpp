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

// JSON and CSV formats. Rationals are always "p/q" (or "p") strings.

#ifndef POLYEULER_IO_HPP_
#define POLYEULER_IO_HPP_

#include <string>

#include "json.hpp"
#include "polyeuler/constructions.hpp"
#include "polyeuler/invariants.hpp"
#include "polyeuler/polyball.hpp"
#include "polyeuler/subspace.hpp"

namespace polyeuler {

using Json = nlohmann::json;

/// Input errors (malformed files, bad values).
class ParseError : public Error {
 public:
  using Error::Error;
};

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const FockVector& v);
/// Shape and multiplicity default to the given ones when absent.
FockVector fock_vector_from_json(const Json& j,
                                 const std::optional<Shape>& shape = {},
                                 int mult_dim = 1);

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const GradedSubspace& m);
GradedSubspace subspace_from_json(const Json& j);

/// Tuple file with an optional "grading": {"degrees": [...]}.
Json to_json(const PolyballTuple& t, const std::optional<Grading>& g = {});
TupleSource tuple_from_json(const Json& j);

Json to_json(const ConstructionSpec& spec);
ConstructionSpec construction_spec_from_json(const Json& j);
/// Parses "t=5/8,omega=1/2,max_terms=12,mult=2"; the shape is passed
/// separately.
ConstructionSpec parse_construct_arg(const std::string& arg,
                                     const std::vector<int>& shape);
Json to_json(const ExpansionSpec& spec);

Json to_json(const InvariantSequence& seq);
InvariantSequence sequence_from_json(const Json& j);
std::string to_csv(const InvariantSequence& seq);

Json to_json(const CheckReport& r);
CheckReport check_report_from_json(const Json& j);

Json to_json(const NumericTraceReport& r);

Json read_json_file(const std::string& path);
/// Parses "2,2" or "[2,2]" into integers.
std::vector<int> parse_int_list(const std::string& s);

}  // namespace polyeuler

#endif  // POLYEULER_IO_HPP_

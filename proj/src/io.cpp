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

#include "polyeuler/io.hpp"

#include <fstream>
#include <sstream>

namespace polyeuler {
namespace {

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field \"") + key + "\": " + e.what());
  }
}

Json degree_to_json(const MultiDegree& q) { return Json(q.values()); }

MultiDegree degree_from_json(const Json& j) {
  try {
    return MultiDegree(j.get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("multidegree: ") + e.what());
  }
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(rational_to_json(r));
  return out;
}

}  // namespace

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rational must be a \"p/q\" string, got " + j.dump());
}

// ---------------------------------------------------------------------------
// Fock vectors

Json to_json(const FockVector& v) {
  Json terms = Json::array();
  for (const auto& [key, c] : v.terms())
    terms.push_back({{"words", key.word.words},
                     {"mult", key.mult},
                     {"coeff", rational_to_json(c)}});
  return {{"shape", v.shape().counts()},
          {"mult_dim", v.mult_dim()},
          {"terms", terms}};
}

FockVector fock_vector_from_json(const Json& j,
                                 const std::optional<Shape>& shape,
                                 int mult_dim) {
  if (!j.is_object()) throw ParseError("Fock vector must be a JSON object");
  Shape s = j.contains("shape") ? Shape(get_field<std::vector<int>>(j, "shape"))
                                : (shape ? *shape : throw ParseError(
                                                        "Fock vector has no shape"));
  const int r = j.contains("mult_dim") ? get_field<int>(j, "mult_dim") : mult_dim;
  FockVector v(s, r);
  if (!j.contains("terms")) throw ParseError("Fock vector has no terms");
  for (const Json& t : j.at("terms")) {
    BasisKey key;
    key.word.words = get_field<std::vector<Word>>(t, "words");
    key.mult = t.contains("mult") ? get_field<int>(t, "mult") : 1;
    try {
      v.add(key, rational_from_json(t.at("coeff")));
    } catch (const PreconditionError& e) {
      throw ParseError(std::string("bad term: ") + e.what());
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Matrices and tuples

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(rationals_to_json(m.row(r)));
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const Json& row : j) {
    if (!row.is_array()) throw ParseError("matrix row must be an array");
    std::vector<Rational> r;
    for (const Json& x : row) r.push_back(rational_from_json(x));
    if (!rows.empty() && r.size() != rows.front().size())
      throw ParseError("matrix rows have different lengths");
    rows.push_back(std::move(r));
  }
  return Matrix::from_rows(rows);
}

Json to_json(const PolyballTuple& t, const std::optional<Grading>& g) {
  Json ops = Json::array();
  for (const auto& factor : t.ops()) {
    Json f = Json::array();
    for (const Matrix& m : factor) f.push_back(to_json(m));
    ops.push_back(f);
  }
  Json out = {{"shape", t.shape().counts()}, {"dim", t.dim()}, {"ops", ops}};
  if (t.has_metric()) out["metric"] = to_json(t.metric());
  if (g) {
    Json degrees = Json::array();
    for (const auto& d : g->degree_of) degrees.push_back(degree_to_json(d));
    out["grading"] = {{"degrees", degrees}};
  }
  return out;
}

TupleSource tuple_from_json(const Json& j) {
  const Shape shape(get_field<std::vector<int>>(j, "shape"));
  const auto dim = get_field<std::size_t>(j, "dim");
  if (!j.contains("ops") || !j.at("ops").is_array())
    throw ParseError("tuple file needs \"ops\"");
  std::vector<std::vector<Matrix>> ops;
  for (const Json& factor : j.at("ops")) {
    std::vector<Matrix> f;
    for (const Json& m : factor) f.push_back(matrix_from_json(m));
    ops.push_back(std::move(f));
  }
  std::optional<Matrix> metric;
  if (j.contains("metric")) metric = matrix_from_json(j.at("metric"));
  TupleSource src{PolyballTuple(shape, dim, std::move(ops), std::move(metric)),
                  std::nullopt};
  const Json* degrees = nullptr;
  if (j.contains("grading")) degrees = &j.at("grading").at("degrees");
  if (j.contains("degrees")) degrees = &j.at("degrees");
  if (degrees) {
    Grading g;
    for (const Json& d : *degrees) g.degree_of.push_back(degree_from_json(d));
    src.grading = std::move(g);
  }
  return src;
}

// ---------------------------------------------------------------------------
// Subspaces

Json to_json(const GradedSubspace& m) {
  Json out = {{"shape", m.shape().counts()}, {"mult_dim", m.mult_dim()}};
  switch (m.kind()) {
    case GradedSubspace::Kind::kFull:
      out["kind"] = "full";
      break;
    case GradedSubspace::Kind::kGenerated: {
      out["kind"] = "generated";
      Json gens = Json::array();
      for (const auto& g : m.generators()) gens.push_back(to_json(g));
      out["generators"] = gens;
      break;
    }
    case GradedSubspace::Kind::kComplementTensor: {
      out["kind"] = "complement_tensor";
      Json factors = Json::array();
      for (const auto& f : m.factors())
        factors.push_back({{"n", f.n}, {"suffixes", f.suffixes}});
      out["factors"] = factors;
      break;
    }
  }
  return out;
}

GradedSubspace subspace_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("subspace spec must be a JSON object");
  const int r = j.contains("mult_dim") ? get_field<int>(j, "mult_dim") : 1;
  std::string kind = j.contains("kind") ? get_field<std::string>(j, "kind")
                     : j.contains("factors") ? "complement_tensor"
                                             : "generated";
  if (kind == "complement_tensor") {
    std::vector<SuffixFactor> factors;
    if (!j.contains("factors")) throw ParseError("missing field \"factors\"");
    for (const Json& f : j.at("factors"))
      factors.push_back(SuffixFactor{get_field<int>(f, "n"),
                                     get_field<std::vector<Word>>(f, "suffixes")});
    GradedSubspace m = GradedSubspace::complement_tensor(std::move(factors), r);
    if (j.contains("shape") &&
        !(Shape(get_field<std::vector<int>>(j, "shape")) == m.shape()))
      throw ParseError("shape does not match the factors");
    return m;
  }
  const Shape shape(get_field<std::vector<int>>(j, "shape"));
  if (kind == "full") return GradedSubspace::full(shape, r);
  if (kind != "generated") throw ParseError("unknown subspace kind " + kind);
  std::vector<FockVector> gens;
  if (!j.contains("generators")) throw ParseError("missing field \"generators\"");
  for (const Json& g : j.at("generators"))
    gens.push_back(fock_vector_from_json(g, shape, r));
  return GradedSubspace::from_generators(shape, r, std::move(gens));
}

// ---------------------------------------------------------------------------
// Constructions

Json to_json(const ConstructionSpec& spec) {
  Json out = {{"t", rational_to_json(spec.t)},
              {"shape", spec.shape},
              {"max_terms", spec.max_terms},
              {"mult_dim", spec.mult_dim}};
  if (spec.omega) out["omega"] = rational_to_json(*spec.omega);
  return out;
}

ConstructionSpec construction_spec_from_json(const Json& j) {
  ConstructionSpec spec;
  if (!j.contains("t")) throw ParseError("construction spec needs \"t\"");
  spec.t = rational_from_json(j.at("t"));
  if (j.contains("omega")) spec.omega = rational_from_json(j.at("omega"));
  if (j.contains("shape")) spec.shape = get_field<std::vector<int>>(j, "shape");
  if (j.contains("max_terms")) spec.max_terms = get_field<int>(j, "max_terms");
  if (j.contains("mult_dim")) spec.mult_dim = get_field<int>(j, "mult_dim");
  return spec;
}

ConstructionSpec parse_construct_arg(const std::string& arg,
                                     const std::vector<int>& shape) {
  ConstructionSpec spec;
  spec.shape = shape;
  bool has_t = false;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParseError("construct argument \"" + item + "\" is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "t") {
        spec.t = parse_rational(value);
        has_t = true;
      } else if (key == "omega") {
        spec.omega = parse_rational(value);
      } else if (key == "max_terms") {
        spec.max_terms = std::stoi(value);
      } else if (key == "mult" || key == "mult_dim") {
        spec.mult_dim = std::stoi(value);
      } else {
        throw ParseError("unknown construct key \"" + key + "\"");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError("construct value for " + key + ": " + e.what());
    }
  }
  if (!has_t) throw ParseError("construct argument needs t=...");
  return spec;
}

Json to_json(const ExpansionSpec& spec) {
  Json terms = Json::array();
  for (const auto& t : spec.terms)
    terms.push_back({{"k", t.position}, {"d", t.digit}});
  return {{"n", spec.n},
          {"t", rational_to_json(spec.t)},
          {"terms", terms},
          {"exact", spec.exact},
          {"partial_sum", rational_to_json(spec.partial_sum())}};
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const InvariantSequence& seq) {
  Json entries = Json::array();
  for (const auto& e : seq.entries)
    entries.push_back({{"q", degree_to_json(e.q)},
                       {"numerator", rational_to_json(e.numerator)},
                       {"denominator", rational_to_json(e.denominator)},
                       {"value", rational_to_json(e.value)},
                       {"level_numerator", rational_to_json(e.level_numerator)},
                       {"level_denominator", rational_to_json(e.level_denominator)},
                       {"level_value", rational_to_json(e.level_value)}});
  Json chain = Json::array();
  for (const auto& q : seq.limit.chain) chain.push_back(degree_to_json(q));
  return {{"kind", to_string(seq.kind)},
          {"source", seq.source},
          {"shape", seq.shape.counts()},
          {"entries", entries},
          {"limit_report",
           {{"status", seq.limit.status},
            {"last_value", rational_to_json(seq.limit.last_value)},
            {"last_delta", rational_to_json(seq.limit.last_delta)},
            {"chain", chain},
            {"note", seq.limit.note}}},
          {"failures", seq.failures},
          {"truncated_expansion", seq.truncated_expansion}};
}

InvariantSequence sequence_from_json(const Json& j) {
  InvariantSequence seq;
  const auto kind = get_field<std::string>(j, "kind");
  if (kind == "chi")
    seq.kind = InvariantKind::kChi;
  else if (kind == "curv")
    seq.kind = InvariantKind::kCurv;
  else if (kind == "curv-simplex")
    seq.kind = InvariantKind::kCurvSimplex;
  else
    throw ParseError("unknown sequence kind " + kind);
  seq.source = get_field<std::string>(j, "source");
  seq.shape = Shape(get_field<std::vector<int>>(j, "shape"));
  for (const Json& e : j.at("entries")) {
    SequenceEntry entry;
    entry.q = degree_from_json(e.at("q"));
    entry.numerator = rational_from_json(e.at("numerator"));
    entry.denominator = rational_from_json(e.at("denominator"));
    entry.value = rational_from_json(e.at("value"));
    entry.level_numerator = rational_from_json(e.at("level_numerator"));
    entry.level_denominator = rational_from_json(e.at("level_denominator"));
    entry.level_value = rational_from_json(e.at("level_value"));
    seq.entries.push_back(std::move(entry));
  }
  const Json& lim = j.at("limit_report");
  seq.limit.status = get_field<std::string>(lim, "status");
  seq.limit.last_value = rational_from_json(lim.at("last_value"));
  seq.limit.last_delta = rational_from_json(lim.at("last_delta"));
  for (const Json& q : lim.at("chain")) seq.limit.chain.push_back(degree_from_json(q));
  seq.limit.note = get_field<std::string>(lim, "note");
  seq.failures = get_field<std::vector<std::string>>(j, "failures");
  seq.truncated_expansion = get_field<bool>(j, "truncated_expansion");
  return seq;
}

std::string to_csv(const InvariantSequence& seq) {
  std::ostringstream os;
  for (std::size_t i = 0; i < seq.shape.k(); ++i) os << "q" << i + 1 << ",";
  os << "numerator,denominator,value,level_numerator,level_denominator,"
        "level_value\n";
  for (const auto& e : seq.entries) {
    for (std::size_t i = 0; i < e.q.k(); ++i) os << e.q[i] << ",";
    os << to_string(e.numerator) << "," << to_string(e.denominator) << ","
       << to_string(e.value) << "," << to_string(e.level_numerator) << ","
       << to_string(e.level_denominator) << "," << to_string(e.level_value)
       << "\n";
  }
  return os.str();
}

Json to_json(const CheckReport& r) {
  return {{"name", r.name},
          {"pass", r.pass},
          {"details", r.details},
          {"failure", r.failure}};
}

CheckReport check_report_from_json(const Json& j) {
  CheckReport r;
  r.name = get_field<std::string>(j, "name");
  r.pass = get_field<bool>(j, "pass");
  r.details = get_field<std::vector<std::string>>(j, "details");
  r.failure = get_field<std::string>(j, "failure");
  return r;
}

Json to_json(const NumericTraceReport& r) {
  Json cutoffs = Json::array();
  for (const auto& c : r.cutoffs) cutoffs.push_back(degree_to_json(c));
  return {{"approximate", true},
          {"cutoff_schedule", cutoffs},
          {"values", r.values},
          {"last_increment", r.last_increment},
          {"ill_conditioned", r.ill_conditioned},
          {"diagnostic", r.diagnostic}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<int> parse_int_list(const std::string& s) {
  std::string body = s;
  if (!body.empty() && body.front() == '[') body.erase(0, 1);
  if (!body.empty() && body.back() == ']') body.pop_back();
  std::vector<int> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos)
        throw ParseError("bad integer \"" + item + "\"");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("bad integer \"" + item + "\" in \"" + s + "\"");
    }
  }
  if (out.empty()) throw ParseError("empty integer list \"" + s + "\"");
  return out;
}

}  // namespace polyeuler

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

// Python bindings. Rationals cross the boundary as "p/q" strings and
// reports as JSON text; the Python package turns both into native objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyeuler/constructions.hpp"
#include "polyeuler/invariants.hpp"
#include "polyeuler/io.hpp"

namespace py = pybind11;
using namespace polyeuler;

namespace {

using StringMatrix = std::vector<std::vector<std::string>>;

StringMatrix to_strings(const Matrix& m) {
  StringMatrix out(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = to_string(m(r, c));
  return out;
}

InvariantSource make_source(const py::object& obj, const std::string& kind) {
  if (py::isinstance<TupleSource>(obj)) return obj.cast<TupleSource>();
  const GradedSubspace& m = obj.cast<const GradedSubspace&>();
  if (kind == "coinvariant") return CoinvariantSource{m};
  if (kind == "restriction") return RestrictionSource{m};
  throw PreconditionError("source must be coinvariant or restriction");
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Exact Euler characteristic and curvature computations";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(mod, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(mod, "PreconditionError",
                                            PyExc_ValueError);

  py::class_<TupleSource>(mod, "Tuple")
      .def_static(
          "from_json",
          [](const std::string& text) {
            return tuple_from_json(Json::parse(text));
          },
          py::arg("text"))
      .def("to_json",
           [](const TupleSource& t) {
             return to_json(t.tuple, t.grading).dump();
           })
      .def_property_readonly(
          "shape", [](const TupleSource& t) { return t.tuple.shape().counts(); })
      .def_property_readonly("dim",
                             [](const TupleSource& t) { return t.tuple.dim(); })
      .def_property_readonly(
          "graded", [](const TupleSource& t) { return t.grading.has_value(); })
      .def("is_in_polyball",
           [](const TupleSource& t) { return is_in_polyball(t.tuple).member; })
      .def("defect",
           [](const TupleSource& t) {
             return to_strings(defect_data(t.tuple).delta);
           })
      .def("defect_rank",
           [](const TupleSource& t) { return defect_data(t.tuple).delta_rank; })
      .def(
          "berezin_gram",
          [](const TupleSource& t, const std::vector<int>& q) {
            return to_strings(berezin_gram(t.tuple, MultiDegree(q)));
          },
          py::arg("q"))
      .def(
          "phi_power_formula",
          [](const TupleSource& t, const std::vector<int>& q) {
            return to_strings(phi_power_formula(t.tuple, MultiDegree(q)));
          },
          py::arg("q"))
      .def(
          "span_dim",
          [](const TupleSource& t, const std::vector<int>& q) {
            return span_dim(t.tuple, defect_data(t.tuple).defect_basis,
                            MultiDegree(q));
          },
          py::arg("q"));

  py::class_<GradedSubspace>(mod, "Subspace")
      .def_static(
          "from_json",
          [](const std::string& text) {
            return subspace_from_json(Json::parse(text));
          },
          py::arg("text"))
      .def_static(
          "full",
          [](const std::vector<int>& shape, int mult_dim) {
            return GradedSubspace::full(Shape(shape), mult_dim);
          },
          py::arg("shape"), py::arg("mult_dim") = 1)
      .def("to_json", [](const GradedSubspace& m) { return to_json(m).dump(); })
      .def_property_readonly(
          "shape", [](const GradedSubspace& m) { return m.shape().counts(); })
      .def_property_readonly("mult_dim", &GradedSubspace::mult_dim)
      .def(
          "block_dim",
          [](const GradedSubspace& m, const std::vector<int>& s) {
            return m.block_dim(MultiDegree(s));
          },
          py::arg("s"))
      .def(
          "dim_leq_sub",
          [](const GradedSubspace& m, const std::vector<int>& q) {
            return m.dim_leq_sub(MultiDegree(q)).get_str();
          },
          py::arg("q"))
      .def("describe", &GradedSubspace::describe);

  mod.def(
      "construct",
      [](const std::string& t, const std::vector<int>& shape,
         std::optional<std::string> omega, int max_terms, int mult_dim) {
        ConstructionSpec spec;
        spec.t = parse_rational(t);
        if (omega) spec.omega = parse_rational(*omega);
        spec.shape = shape;
        spec.max_terms = max_terms;
        spec.mult_dim = mult_dim;
        Construction c = build(spec);
        return py::make_tuple(c.subspace, c.exact, c.description);
      },
      py::arg("t"), py::arg("shape"), py::arg("omega") = py::none(),
      py::arg("max_terms") = 64, py::arg("mult_dim") = 1,
      "Builds M(t) or M^(omega)(t); returns (subspace, exact, description).");

  mod.def(
      "expand",
      [](const std::string& t, int n, int max_terms) {
        return to_json(expand(parse_rational(t), n, max_terms)).dump();
      },
      py::arg("t"), py::arg("n"), py::arg("max_terms") = 64);

  mod.def(
      "sequence",
      [](const std::string& kind, const py::object& src,
         const std::vector<int>& q_max, const std::string& source_kind,
         int workers, bool truncated) {
        const InvariantSource s = make_source(src, source_kind);
        const EvalOptions opts{workers, truncated};
        InvariantSequence seq;
        {
          py::gil_scoped_release release;
          if (kind == "chi")
            seq = chi_sequence(s, MultiDegree(q_max), opts);
          else if (kind == "curv")
            seq = curv_sequence(s, MultiDegree(q_max), opts);
          else if (kind == "curv-simplex" && q_max.size() == 1)
            seq = curv_simplex_sequence(s, q_max[0], opts);
          else
            throw PreconditionError("unknown sequence kind " + kind);
        }
        return to_json(seq).dump();
      },
      py::arg("kind"), py::arg("source"), py::arg("q_max"),
      py::arg("source_kind") = "coinvariant", py::arg("workers") = 1,
      py::arg("truncated") = false);

  mod.def(
      "gbc_check",
      [](const py::object& src, const std::vector<int>& q_max,
         const std::string& source_kind) {
        return to_json(gbc_check(make_source(src, source_kind),
                                 MultiDegree(q_max)))
            .dump();
      },
      py::arg("source"), py::arg("q_max"),
      py::arg("source_kind") = "coinvariant");

  mod.def(
      "verify_identities",
      [](const TupleSource& t, const std::vector<int>& q_max) {
        return to_json(verify_identities(t.tuple, MultiDegree(q_max))).dump();
      },
      py::arg("tuple"), py::arg("q_max"));

  mod.def(
      "to_csv",
      [](const std::string& sequence_json) {
        return to_csv(sequence_from_json(Json::parse(sequence_json)));
      },
      py::arg("sequence_json"));
}

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

// Command-line front end. Exit codes: 0 all requested checks pass, 1 a
// check failed, 2 input could not be parsed, 3 a precondition failed.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyeuler/constructions.hpp"
#include "polyeuler/invariants.hpp"
#include "polyeuler/io.hpp"

namespace polyeuler {
namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;

struct Options {
  std::string shape;
  std::string qmax;
  std::string tuple_path;
  std::string subspace_path;
  std::string construct;
  std::string source = "coinvariant";
  std::string format = "csv";
  std::string out_dir;
  std::string inner_cutoff;
  int workers = 1;
};

struct Loaded {
  InvariantSource source;
  bool truncated = false;
  std::string label;
};

MultiDegree degree_arg(const std::string& text, std::size_t k,
                       const char* flag) {
  if (text.empty())
    throw PreconditionError(std::string("missing ") + flag);
  std::vector<int> v = parse_int_list(text);
  if (v.size() == 1 && k > 1) v.assign(k, v[0]);
  if (v.size() != k)
    throw PreconditionError(std::string(flag) + " " + text + " has " +
                            std::to_string(v.size()) + " entries; shape has " +
                            std::to_string(k) + " factors");
  return MultiDegree(std::move(v));
}

Loaded load_source(const Options& o) {
  const int given = !o.tuple_path.empty() + !o.subspace_path.empty() +
                    !o.construct.empty();
  if (given != 1)
    throw PreconditionError(
        "give exactly one of --tuple, --subspace, --construct");
  Loaded out;
  if (!o.tuple_path.empty()) {
    out.source = tuple_from_json(read_json_file(o.tuple_path));
    out.label = o.tuple_path;
    return out;
  }
  GradedSubspace m = GradedSubspace::full(Shape({2}));
  if (!o.subspace_path.empty()) {
    m = subspace_from_json(read_json_file(o.subspace_path));
    out.label = o.subspace_path;
  } else {
    if (o.shape.empty()) throw PreconditionError("--construct needs --shape");
    Construction c = build(parse_construct_arg(o.construct, parse_int_list(o.shape)));
    m = c.subspace;
    out.truncated = !c.exact;
    out.label = c.description;
  }
  if (o.source == "coinvariant")
    out.source = CoinvariantSource{m};
  else if (o.source == "restriction")
    out.source = RestrictionSource{m};
  else
    throw ParseError("--source must be coinvariant or restriction");
  return out;
}

void emit(const Options& o, const std::string& stem, const std::string& text) {
  if (o.out_dir.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::filesystem::create_directories(o.out_dir);
  const std::filesystem::path path = std::filesystem::path(o.out_dir) / stem;
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
  std::cerr << "wrote " << path.string() << '\n';
}

std::string render(const Options& o, const InvariantSequence& seq) {
  if (o.format == "json") return to_json(seq).dump(2);
  if (o.format == "csv") return to_csv(seq);
  throw ParseError("--format must be csv or json");
}

int run_sequence(const Options& o, InvariantKind kind) {
  Loaded src = load_source(o);
  EvalOptions eval{o.workers, src.truncated};
  const Shape& shape = source_shape(src.source);
  InvariantSequence seq;
  if (kind == InvariantKind::kCurvSimplex) {
    std::vector<int> m = parse_int_list(o.qmax.empty() ? "" : o.qmax);
    if (m.size() != 1) throw PreconditionError("curv-simplex takes --qmax M");
    seq = curv_simplex_sequence(src.source, m[0], eval);
  } else {
    const MultiDegree qmax = degree_arg(o.qmax, shape.k(), "--qmax");
    seq = kind == InvariantKind::kChi ? chi_sequence(src.source, qmax, eval)
                                      : curv_sequence(src.source, qmax, eval);
  }
  emit(o, to_string(kind) + "." + o.format, render(o, seq));
  for (const auto& f : seq.failures) std::cerr << "failure: " << f << '\n';
  return seq.failures.empty() ? 0 : kExitCheckFailed;
}

int run_numeric(const Options& o) {
  if (o.subspace_path.empty())
    throw PreconditionError("--inner-cutoff needs --subspace with generators");
  const Json j = read_json_file(o.subspace_path);
  if (!j.contains("generators"))
    throw ParseError("numeric mode needs a \"generators\" list");
  const Shape shape(j.at("shape").get<std::vector<int>>());
  const int r = j.value("mult_dim", 1);
  std::vector<FockVector> gens;
  for (const Json& g : j.at("generators"))
    gens.push_back(fock_vector_from_json(g, shape, r));
  const MultiDegree qmax = degree_arg(o.qmax, shape.k(), "--qmax");
  const MultiDegree cutoff =
      degree_arg(o.inner_cutoff, shape.k(), "--inner-cutoff");
  NumericTraceReport rep = numeric_mode_trace(gens, qmax, cutoff);
  emit(o, "numeric.json", to_json(rep).dump(2));
  return rep.ill_conditioned ? kExitCheckFailed : 0;
}

std::string report_text(const CheckReport& r) {
  std::ostringstream os;
  os << r.name << ": " << (r.pass ? "pass" : "FAIL") << '\n';
  for (const auto& d : r.details) os << "  " << d << '\n';
  if (!r.pass) os << "  first failure: " << r.failure << '\n';
  return os.str();
}

int emit_check(const Options& o, const CheckReport& r, std::string text) {
  if (o.format == "json")
    emit(o, r.name + ".json", to_json(r).dump(2));
  else
    emit(o, r.name + ".txt", text);
  return r.pass ? 0 : kExitCheckFailed;
}

int run_gbc(const Options& o) {
  Loaded src = load_source(o);
  const MultiDegree qmax =
      degree_arg(o.qmax, source_shape(src.source).k(), "--qmax");
  CheckReport r = gbc_check(src.source, qmax, EvalOptions{o.workers, false});
  std::string text = report_text(r);
  text += std::string("trace=rank at all q: ") + (r.pass ? "pass" : "fail") +
          '\n';
  return emit_check(o, r, text);
}

int run_identities(const Options& o) {
  if (o.tuple_path.empty())
    throw PreconditionError("verify-identities needs --tuple");
  TupleSource src = tuple_from_json(read_json_file(o.tuple_path));
  const MultiDegree qmax = degree_arg(o.qmax, src.tuple.shape().k(), "--qmax");
  CheckReport r = verify_identities(src.tuple, qmax);
  return emit_check(o, r, report_text(r));
}

int run_construct(const Options& o) {
  if (o.construct.empty() || o.shape.empty())
    throw PreconditionError("construct needs --construct and --shape");
  const ConstructionSpec spec =
      parse_construct_arg(o.construct, parse_int_list(o.shape));
  const Construction c = build(spec);
  Json out = {{"spec", to_json(spec)},
              {"description", c.description},
              {"exact", c.exact},
              {"subspace", to_json(c.subspace)}};
  Json expansions = Json::array();
  for (const auto& e : c.expansions) expansions.push_back(to_json(e));
  out["expansions"] = expansions;
  if (!o.qmax.empty()) {
    const MultiDegree qmax =
        degree_arg(o.qmax, c.subspace.shape().k(), "--qmax");
    out["chi"] = to_json(chi_sequence(CoinvariantSource{c.subspace}, qmax,
                                      EvalOptions{o.workers, !c.exact}));
  }
  emit(o, "construction.json", out.dump(2));
  return 0;
}

int run_suite(const Options& o) {
  Loaded src = load_source(o);
  const Shape& shape = source_shape(src.source);
  const MultiDegree qmax = degree_arg(o.qmax, shape.k(), "--qmax");
  CheckReport all;
  all.name = "suite";
  std::string text;
  auto add = [&](const CheckReport& r) {
    all.merge(r);
    all.details.push_back(r.name + ": " + (r.pass ? "pass" : "FAIL"));
    text += report_text(r);
  };
  if (const auto* ts = std::get_if<TupleSource>(&src.source)) {
    const PolyballMembership mem = is_in_polyball(ts->tuple);
    CheckReport m;
    m.name = "polyball";
    if (!mem.member) {
      std::ostringstream os;
      os << "defect map at p=(";
      for (std::size_t i = 0; i < mem.violating_p.size(); ++i)
        os << (i ? "," : "") << mem.violating_p[i];
      os << ") is not PSD, witness value " << to_string(mem.witness_value);
      m.fail(os.str());
    }
    add(m);
    if (mem.member) {
      add(verify_identities(ts->tuple, qmax));
      add(inequality_check(ts->tuple, qmax));
      if (ts->grading) add(gbc_check(src.source, qmax));
    }
  } else {
    add(gbc_check(src.source, qmax, EvalOptions{o.workers, false}));
  }
  for (const InvariantKind kind : {InvariantKind::kChi, InvariantKind::kCurv}) {
    try {
      InvariantSequence seq =
          kind == InvariantKind::kChi
              ? chi_sequence(src.source, qmax, EvalOptions{o.workers, src.truncated})
              : curv_sequence(src.source, qmax,
                              EvalOptions{o.workers, src.truncated});
      CheckReport r;
      r.name = to_string(kind);
      for (const auto& f : seq.failures) r.fail(f);
      r.details.push_back("limit " + seq.limit.status + ", last value " +
                          to_string(seq.limit.last_value));
      add(r);
    } catch (const PreconditionError& e) {
      text += to_string(kind) + ": skipped (" + e.what() + ")\n";
    }
  }
  text += std::string("suite: ") + (all.pass ? "pass" : "FAIL") + '\n';
  return emit_check(o, all, text);
}

void add_common(CLI::App* sub, Options& o, bool sources, bool qmax) {
  if (sources) {
    sub->add_option("--tuple", o.tuple_path, "Tuple JSON file");
    sub->add_option("--subspace", o.subspace_path, "Subspace JSON file");
    sub->add_option("--construct", o.construct,
                    "Construction, e.g. t=5/8,omega=1/2,max_terms=12");
    sub->add_option("--source", o.source,
                    "Operator built from a subspace: coinvariant|restriction")
        ->check(CLI::IsMember({"coinvariant", "restriction"}));
  }
  sub->add_option("--shape", o.shape, "Shape, e.g. 2,2");
  if (qmax) sub->add_option("--qmax", o.qmax, "Largest truncation, e.g. 6,6");
  sub->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out_dir, "Directory for report files");
  sub->add_option("--workers", o.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
}

int main_impl(int argc, char** argv) {
  CLI::App app{"Euler characteristic and curvature of polyball elements"};
  app.require_subcommand(1);
  Options o;
  auto* chi = app.add_subcommand("chi", "Euler characteristic sequence");
  add_common(chi, o, true, true);
  chi->add_option("--inner-cutoff", o.inner_cutoff,
                  "Approximate trace for non-graded generators");
  auto* curv = app.add_subcommand("curv", "Curvature sequence (box form)");
  add_common(curv, o, true, true);
  auto* simplex =
      app.add_subcommand("curv-simplex", "Curvature sequence (simplex form)");
  add_common(simplex, o, true, true);
  auto* gbc = app.add_subcommand("gbc-check", "trace = rank for graded sources");
  add_common(gbc, o, true, true);
  auto* ident = app.add_subcommand("verify-identities",
                                   "Gram identities of a tuple");
  add_common(ident, o, true, true);
  auto* construct = app.add_subcommand("construct", "Build M(t) or M^(omega)(t)");
  add_common(construct, o, true, true);
  auto* suite = app.add_subcommand("suite", "All checks for one source");
  add_common(suite, o, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }
  if (chi->parsed() && !o.inner_cutoff.empty()) return run_numeric(o);
  if (chi->parsed()) return run_sequence(o, InvariantKind::kChi);
  if (curv->parsed()) return run_sequence(o, InvariantKind::kCurv);
  if (simplex->parsed()) return run_sequence(o, InvariantKind::kCurvSimplex);
  if (gbc->parsed()) return run_gbc(o);
  if (ident->parsed()) return run_identities(o);
  if (construct->parsed()) return run_construct(o);
  return run_suite(o);
}

void report_error(const char* kind, const std::exception& e) {
  Json rec = {{"error", kind}, {"message", e.what()}};
  std::cerr << rec.dump() << '\n';
}

}  // namespace
}  // namespace polyeuler

int main(int argc, char** argv) {
  using namespace polyeuler;
  try {
    return main_impl(argc, argv);
  } catch (const ParseError& e) {
    report_error("parse", e);
    return kExitParse;
  } catch (const nlohmann::json::exception& e) {
    report_error("parse", e);
    return kExitParse;
  } catch (const PreconditionError& e) {
    report_error("precondition", e);
    return kExitPrecondition;
  } catch (const std::exception& e) {
    report_error("error", e);
    return kExitPrecondition;
  }
}

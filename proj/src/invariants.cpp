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

#include "polyeuler/invariants.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace polyeuler {
namespace {

// Runs fn(0..count-1) on up to `workers` threads. Results are written by
// index, so the output order never depends on scheduling.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t threads =
      std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void require_shape(const Shape& shape, const MultiDegree& q) {
  if (q.k() != shape.k())
    throw PreconditionError("q_max " + q.str() + " does not match shape " +
                            shape.str());
  for (std::size_t i = 0; i < q.k(); ++i)
    if (q[i] < 0) throw PreconditionError("q_max must be >= 0");
}

void require_euler(const Shape& shape) {
  if (!shape.euler_admissible())
    throw PreconditionError(
        "the Euler characteristic requires n_i >= 2 for every factor (shape " +
        shape.str() +
        "); existence for n_i = 1 is an open problem, use curv instead");
}

Integer binomial(int n, int k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

// Inclusion-exclusion: contribution of level q from box numerators.
Rational level_from_box(const std::map<MultiDegree, Rational>& box_values,
                        const MultiDegree& q) {
  const std::size_t k = q.k();
  Rational out = 0;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    MultiDegree p = q;
    bool valid = true;
    int bits = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) {
        ++bits;
        if (--p[i] < 0) valid = false;
      }
    if (!valid) continue;
    const Rational& v = box_values.at(p);
    if (bits % 2 == 0)
      out += v;
    else
      out -= v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Restriction numerators

class RestrictionSpans {
 public:
  explicit RestrictionSpans(const GradedSubspace& m)
      : m_(m), window_(m.generator_window()) {
    // Range of Delta_M inside each window block, as reduced rows.
    for (const MultiDegree& t : box(window_)) {
      std::vector<SparseRow> rows;
      for (const FockVector& b : m_.block_basis(t))
        rows.push_back(m_.to_row(m_.defect_apply(b)));
      std::vector<SparseRow> reduced = sparse_rref(rows);
      std::vector<FockVector> vecs;
      for (const auto& r : reduced) vecs.push_back(m_.from_row(t, r));
      if (!vecs.empty()) defect_range_.emplace(t, std::move(vecs));
    }
  }

  const MultiDegree& window() const { return window_; }

  // dim span{S_alpha h : h in range Delta_M, alpha <= q}.
  Integer span_dim(const MultiDegree& q) {
    Integer total = 0;
    for (const MultiDegree& s : box(q + window_)) {
      std::vector<MultiDegree> allowed;
      for (const auto& [t, vecs] : defect_range_)
        if (t.leq(s) && (s - t).leq(q)) allowed.push_back(t);
      if (!allowed.empty()) total += block_rank(s, allowed);
    }
    return total;
  }

  // trace(Delta_M) summed over the ambient basis of the window blocks.
  Rational defect_trace() const {
    Rational tr = 0;
    const Shape& shape = m_.shape();
    for (const MultiDegree& t : box(window_))
      for (const MultiWord& w : enumerate_basis(shape, t))
        for (int mult = 1; mult <= m_.mult_dim(); ++mult) {
          FockVector e = FockVector::basis(shape, w, m_.mult_dim(), mult);
          tr += inner_product(m_.defect_apply(e), e);
        }
    return tr;
  }

 private:
  std::size_t block_rank(const MultiDegree& s,
                         const std::vector<MultiDegree>& allowed) {
    auto key = std::make_pair(s, allowed);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = ranks_.find(key);
      if (it != ranks_.end()) return it->second;
    }
    std::vector<SparseRow> rows;
    for (const MultiDegree& t : allowed)
      for (const MultiWord& alpha : enumerate_basis(m_.shape(), s - t))
        for (const FockVector& h : defect_range_.at(t))
          rows.push_back(m_.to_row(apply_left_word(alpha, h)));
    const std::size_t r = sparse_rank(rows);
    std::lock_guard<std::mutex> lock(mu_);
    ranks_.emplace(std::move(key), r);
    return r;
  }

  const GradedSubspace& m_;
  MultiDegree window_;
  std::map<MultiDegree, std::vector<FockVector>> defect_range_;
  std::mutex mu_;
  std::map<std::pair<MultiDegree, std::vector<MultiDegree>>, std::size_t>
      ranks_;
};

// ---------------------------------------------------------------------------
// Box numerators for every source kind

struct BoxData {
  std::vector<MultiDegree> qs;
  std::vector<Rational> numerators;
  // Direct level numerators when the source provides them.
  std::optional<std::vector<Rational>> levels;
  std::vector<std::string> failures;
};

BoxData tuple_numerators(const TupleSource& src, InvariantKind kind,
                         const MultiDegree& q_max, int workers) {
  const PolyballTuple& t = src.tuple;
  BoxData data;
  data.qs = box(q_max);
  data.numerators.resize(data.qs.size());
  std::vector<std::string> failures(data.qs.size());
  const DefectData defect = defect_data(t);
  parallel_for(data.qs.size(), workers, [&](std::size_t idx) {
    const MultiDegree& q = data.qs[idx];
    const Matrix gram = berezin_gram(t, q);
    const Matrix formula = phi_power_formula(t, q);
    if (kind == InvariantKind::kChi) {
      const std::size_t r_formula = rank(formula);
      const std::size_t r_gram = rank(gram);
      const std::size_t r_span = span_dim(t, defect.defect_basis, q);
      data.numerators[idx] = Rational(static_cast<unsigned long>(r_formula));
      if (r_formula != r_gram || r_gram != r_span)
        failures[idx] = "oracle mismatch at q=" + q.str() +
                        ": rank(formula)=" + std::to_string(r_formula) +
                        " rank(gram)=" + std::to_string(r_gram) +
                        " span_dim=" + std::to_string(r_span);
    } else {
      data.numerators[idx] = t.operator_trace(gram);
      if (!(gram == formula))
        failures[idx] = "Berezin Gram differs from the power formula at q=" +
                        q.str();
    }
  });
  for (auto& f : failures)
    if (!f.empty()) data.failures.push_back(std::move(f));
  return data;
}

BoxData coinvariant_numerators(const CoinvariantSource& src,
                               InvariantKind kind, const MultiDegree& q_max,
                               int workers) {
  const GradedSubspace& m = src.subspace;
  BoxData data;
  data.qs = box(q_max);
  std::vector<Rational> level(data.qs.size());
  parallel_for(data.qs.size(), workers, [&](std::size_t idx) {
    const MultiDegree& s = data.qs[idx];
    const Rational ambient(m.ambient_block_dim(s));
    level[idx] = kind == InvariantKind::kChi
                     ? ambient - Rational(static_cast<unsigned long>(m.block_dim(s)))
                     : ambient - m.block_trace(s);
  });
  // box(q_max) is lexicographic, so every s <= q precedes q.
  std::map<MultiDegree, Rational> by_level;
  for (std::size_t i = 0; i < data.qs.size(); ++i)
    by_level.emplace(data.qs[i], level[i]);
  data.numerators.resize(data.qs.size());
  parallel_for(data.qs.size(), workers, [&](std::size_t idx) {
    Rational sum = 0;
    for (const MultiDegree& s : box(data.qs[idx])) sum += by_level.at(s);
    data.numerators[idx] = sum;
  });
  data.levels = std::move(level);
  return data;
}

BoxData restriction_numerators(const RestrictionSource& src,
                               InvariantKind kind, const MultiDegree& q_max,
                               int workers) {
  BoxData data;
  data.qs = box(q_max);
  data.numerators.resize(data.qs.size());
  RestrictionSpans spans(src.subspace);
  if (kind == InvariantKind::kChi) {
    parallel_for(data.qs.size(), workers, [&](std::size_t idx) {
      data.numerators[idx] = Rational(spans.span_dim(data.qs[idx]));
    });
  } else {
    // Each S_beta restricted to M is an isometry, so every word contributes
    // trace(Delta_M).
    const Rational tr = spans.defect_trace();
    for (std::size_t idx = 0; idx < data.qs.size(); ++idx)
      data.numerators[idx] =
          tr * Rational(dim_leq(src.subspace.shape(), data.qs[idx]));
  }
  return data;
}

BoxData numerators(const InvariantSource& src, InvariantKind kind,
                   const MultiDegree& q_max, int workers) {
  return std::visit(
      [&](const auto& s) -> BoxData {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, TupleSource>)
          return tuple_numerators(s, kind, q_max, workers);
        else if constexpr (std::is_same_v<S, CoinvariantSource>)
          return coinvariant_numerators(s, kind, q_max, workers);
        else
          return restriction_numerators(s, kind, q_max, workers);
      },
      src);
}

InvariantSequence box_sequence(const InvariantSource& src, InvariantKind kind,
                               const MultiDegree& q_max,
                               const EvalOptions& opts) {
  const Shape& shape = source_shape(src);
  require_shape(shape, q_max);
  if (opts.workers < 1) throw PreconditionError("workers must be >= 1");
  BoxData data = numerators(src, kind, q_max, opts.workers);

  InvariantSequence seq;
  seq.kind = kind;
  seq.source = source_kind(src);
  seq.shape = shape;
  seq.failures = std::move(data.failures);
  seq.truncated_expansion = opts.truncated_expansion;
  std::map<MultiDegree, Rational> box_values;
  for (std::size_t i = 0; i < data.qs.size(); ++i)
    box_values.emplace(data.qs[i], data.numerators[i]);
  for (std::size_t i = 0; i < data.qs.size(); ++i) {
    SequenceEntry e;
    e.q = data.qs[i];
    e.numerator = data.numerators[i];
    e.denominator = Rational(dim_leq(shape, e.q));
    e.value = e.numerator / e.denominator;
    e.level_numerator =
        data.levels ? (*data.levels)[i] : level_from_box(box_values, e.q);
    e.level_denominator = Rational(dim_level(shape, e.q));
    e.level_value = e.level_numerator / e.level_denominator;
    seq.entries.push_back(std::move(e));
  }
  seq.limit = limit_report(seq);
  return seq;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sources and sequences

const Shape& source_shape(const InvariantSource& src) {
  return std::visit(
      [](const auto& s) -> const Shape& {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, TupleSource>)
          return s.tuple.shape();
        else
          return s.subspace.shape();
      },
      src);
}

std::string source_kind(const InvariantSource& src) {
  switch (src.index()) {
    case 0:
      return "tuple";
    case 1:
      return "coinvariant";
    default:
      return "restriction";
  }
}

std::string to_string(InvariantKind kind) {
  switch (kind) {
    case InvariantKind::kChi:
      return "chi";
    case InvariantKind::kCurv:
      return "curv";
    case InvariantKind::kCurvSimplex:
      return "curv-simplex";
  }
  return "";
}

const SequenceEntry* InvariantSequence::find(const MultiDegree& q) const {
  for (const auto& e : entries)
    if (e.q == q) return &e;
  return nullptr;
}

InvariantSequence chi_sequence(const InvariantSource& src,
                               const MultiDegree& q_max,
                               const EvalOptions& opts) {
  require_euler(source_shape(src));
  return box_sequence(src, InvariantKind::kChi, q_max, opts);
}

InvariantSequence curv_sequence(const InvariantSource& src,
                                const MultiDegree& q_max,
                                const EvalOptions& opts) {
  return box_sequence(src, InvariantKind::kCurv, q_max, opts);
}

InvariantSequence curv_simplex_sequence(const InvariantSource& src, int m_max,
                                        const EvalOptions& opts) {
  if (m_max < 0) throw PreconditionError("m_max must be >= 0");
  const Shape& shape = source_shape(src);
  const std::size_t k = shape.k();
  InvariantSequence box_seq =
      curv_sequence(src, MultiDegree::diagonal(k, m_max), opts);

  InvariantSequence seq;
  seq.kind = InvariantKind::kCurvSimplex;
  seq.source = box_seq.source;
  seq.shape = shape;
  seq.failures = box_seq.failures;
  seq.truncated_expansion = opts.truncated_expansion;
  for (int m = 0; m <= m_max; ++m) {
    Rational sum = 0;
    for (const auto& e : box_seq.entries)
      if (e.q.total() <= m) sum += e.level_value;
    SequenceEntry e;
    e.q = MultiDegree::diagonal(k, m);
    e.numerator = sum;
    e.denominator = Rational(binomial(m + static_cast<int>(k), static_cast<int>(k)));
    e.value = e.numerator / e.denominator;
    e.level_numerator = e.numerator;
    e.level_denominator = e.denominator;
    e.level_value = e.value;
    seq.entries.push_back(std::move(e));
  }
  seq.limit = limit_report(seq);
  return seq;
}

LimitReport limit_report(const InvariantSequence& seq,
                         std::vector<MultiDegree> chain) {
  LimitReport rep;
  if (chain.empty()) {
    // Diagonal (m, ..., m) as far as the computed entries reach.
    for (int m = 0;; ++m) {
      MultiDegree q = MultiDegree::diagonal(seq.shape.k(), m);
      if (!seq.find(q)) break;
      chain.push_back(q);
    }
  }
  std::vector<Rational> values;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const SequenceEntry* e = seq.find(chain[i]);
    if (!e)
      throw PreconditionError("chain point " + chain[i].str() +
                              " was not computed");
    if (i > 0 && (!chain[i - 1].leq(chain[i]) || chain[i - 1] == chain[i]))
      throw PreconditionError("chain must be strictly increasing");
    values.push_back(e->value);
  }
  rep.chain = chain;
  if (values.empty()) {
    rep.status = "inconclusive";
    rep.note = "no chain points";
    return rep;
  }
  rep.last_value = values.back();
  if (values.size() >= 2)
    rep.last_delta = values.back() - values[values.size() - 2];

  const std::size_t n = values.size();
  const bool stable = n >= 3 && values[n - 1] == values[n - 2] &&
                      values[n - 2] == values[n - 3];
  if (stable && !seq.truncated_expansion) {
    rep.status = "exact-stabilized";
    return rep;
  }
  if (stable) rep.note = "values repeat but the expansion is truncated";
  bool nondecreasing = true, nonincreasing = true, shrinking = true;
  for (std::size_t i = 1; i < n; ++i) {
    const Rational d = values[i] - values[i - 1];
    if (d < 0) nondecreasing = false;
    if (d > 0) nonincreasing = false;
    if (i >= 2 && abs(d) > abs(values[i - 1] - values[i - 2])) shrinking = false;
  }
  if (n >= 3 && (nondecreasing || nonincreasing) && shrinking)
    rep.status = "monotone-converging";
  else
    rep.status = "inconclusive";
  if (seq.truncated_expansion && rep.note.empty())
    rep.note = "truncated expansion: no exact limit claim";
  return rep;
}

// ---------------------------------------------------------------------------
// Checks

void CheckReport::fail(const std::string& msg) {
  if (pass) failure = msg;
  pass = false;
  details.push_back("FAIL " + msg);
}

void CheckReport::merge(const CheckReport& other) {
  for (const auto& d : other.details) details.push_back(other.name + ": " + d);
  if (!other.pass && pass) failure = other.name + ": " + other.failure;
  pass = pass && other.pass;
}

CheckReport verify_identities(const PolyballTuple& t,
                              const MultiDegree& q_max) {
  require_shape(t.shape(), q_max);
  CheckReport rep;
  rep.name = "verify-identities";
  const DefectData defect = defect_data(t);
  const Matrix identity = t.identity_kernel();
  std::map<MultiDegree, Matrix> grams;
  for (const MultiDegree& q : box(q_max)) {
    const Matrix gram = berezin_gram(t, q);
    const Matrix formula = phi_power_formula(t, q);
    const Matrix telescoped = telescoping_sum(t, q);
    const bool kpk = gram == formula;
    const bool tele = gram == telescoped;
    const std::size_t r_span = span_dim(t, defect.defect_basis, q);
    const std::size_t r_gram = rank(gram);
    const std::size_t r_formula = rank(formula);
    const bool triangle = r_span == r_gram && r_gram == r_formula;
    bool chain = psd_test(gram).psd && loewner_leq(gram, identity);
    for (std::size_t i = 0; i < q.k(); ++i)
      if (q[i] > 0) {
        MultiDegree prev = q;
        --prev[i];
        chain = chain && loewner_leq(grams.at(prev), gram);
      }
    std::ostringstream os;
    os << "q=" << q.str() << ": KPK " << (kpk ? "pass" : "FAIL")
       << ", telescoping " << (tele ? "pass" : "FAIL") << ", span_dim="
       << r_span << " rank(gram)=" << r_gram << " rank(formula)=" << r_formula
       << (triangle ? " pass" : " FAIL") << ", PSD chain "
       << (chain ? "pass" : "FAIL");
    rep.details.push_back(os.str());
    if (!(kpk && tele && triangle && chain) && rep.pass) {
      rep.pass = false;
      rep.failure = os.str();
    }
    grams.emplace(q, gram);
  }
  return rep;
}

CheckReport inequality_check(const PolyballTuple& t, const MultiDegree& q_max) {
  require_shape(t.shape(), q_max);
  CheckReport rep;
  rep.name = "inequality";
  const DefectData defect = defect_data(t);
  for (const MultiDegree& q : box(q_max)) {
    const Matrix gram = berezin_gram(t, q);
    const Rational tr = t.operator_trace(gram);
    const Rational rk(static_cast<unsigned long>(rank(gram)));
    const Rational sd(static_cast<unsigned long>(span_dim(t, defect.defect_basis, q)));
    const Rational den(dim_leq(t.shape(), q));
    const Rational bound = den * Rational(static_cast<unsigned long>(defect.delta_rank));
    std::ostringstream os;
    os << "q=" << q.str() << ": " << to_string(tr / den) << " <= "
       << to_string(rk / den) << " <= " << defect.delta_rank;
    if (tr > rk || sd > bound || rk / den > Rational(static_cast<unsigned long>(defect.delta_rank)))
      rep.fail(os.str());
    else
      rep.details.push_back(os.str());
  }
  return rep;
}

CheckReport additivity_check(const PolyballTuple& a, const PolyballTuple& b,
                             const MultiDegree& q_max) {
  CheckReport rep;
  rep.name = "additivity";
  const PolyballTuple sum = direct_sum(a, b);
  require_shape(sum.shape(), q_max);
  for (const MultiDegree& q : box(q_max)) {
    const Matrix ga = berezin_gram(a, q), gb = berezin_gram(b, q),
                 gs = berezin_gram(sum, q);
    const Rational den(dim_leq(sum.shape(), q));
    const Rational chi_a = Rational(static_cast<unsigned long>(rank(ga))) / den;
    const Rational chi_b = Rational(static_cast<unsigned long>(rank(gb))) / den;
    const Rational chi_s = Rational(static_cast<unsigned long>(rank(gs))) / den;
    const Rational curv_a = a.operator_trace(ga) / den;
    const Rational curv_b = b.operator_trace(gb) / den;
    const Rational curv_s = sum.operator_trace(gs) / den;
    std::ostringstream os;
    os << "q=" << q.str() << ": chi " << to_string(chi_s) << " = "
       << to_string(chi_a) << " + " << to_string(chi_b) << ", curv "
       << to_string(curv_s) << " = " << to_string(curv_a) << " + "
       << to_string(curv_b);
    if (chi_s != chi_a + chi_b || curv_s != curv_a + curv_b)
      rep.fail(os.str());
    else
      rep.details.push_back(os.str());
  }
  return rep;
}

namespace {

std::vector<MultiDegree> split_degree(const MultiDegree& q,
                                      const std::vector<std::size_t>& sizes) {
  std::vector<MultiDegree> out;
  std::size_t pos = 0;
  for (std::size_t sz : sizes) {
    std::vector<int> part(q.values().begin() + static_cast<long>(pos),
                          q.values().begin() + static_cast<long>(pos + sz));
    out.emplace_back(std::move(part));
    pos += sz;
  }
  return out;
}

MultiDegree concat_degrees(const std::vector<MultiDegree>& qs) {
  std::vector<int> all;
  for (const auto& q : qs)
    all.insert(all.end(), q.values().begin(), q.values().end());
  return MultiDegree(std::move(all));
}

}  // namespace

CheckReport multiplicativity_check(const std::vector<PolyballTuple>& xs,
                                   const std::vector<MultiDegree>& q_max) {
  if (xs.size() != q_max.size())
    throw PreconditionError("multiplicativity_check: one q_max per tuple");
  CheckReport rep;
  rep.name = "multiplicativity";
  const PolyballTuple amp = ampliation(xs);
  std::vector<std::size_t> sizes;
  for (std::size_t m = 0; m < xs.size(); ++m) {
    require_shape(xs[m].shape(), q_max[m]);
    sizes.push_back(xs[m].shape().k());
  }
  // Defect of the ampliation is the tensor product of the defects.
  Matrix kron_delta = Matrix::identity(1);
  for (const auto& x : xs) kron_delta = kron(kron_delta, defect_data(x).delta);
  if (!(defect_data(amp).delta == kron_delta))
    rep.fail("Delta of the ampliation differs from the tensor of the defects");

  std::vector<std::map<MultiDegree, Matrix>> grams(xs.size());
  for (std::size_t m = 0; m < xs.size(); ++m)
    for (const MultiDegree& q : box(q_max[m]))
      grams[m].emplace(q, berezin_gram(xs[m], q));
  for (const MultiDegree& q : box(concat_degrees(q_max))) {
    const std::vector<MultiDegree> parts = split_degree(q, sizes);
    const Matrix g = berezin_gram(amp, q);
    const Rational den(dim_leq(amp.shape(), q));
    const Rational chi = Rational(static_cast<unsigned long>(rank(g))) / den;
    const Rational curv = amp.operator_trace(g) / den;
    Rational chi_prod = 1, curv_prod = 1;
    for (std::size_t m = 0; m < xs.size(); ++m) {
      const Matrix& gm = grams[m].at(parts[m]);
      const Rational dm(dim_leq(xs[m].shape(), parts[m]));
      chi_prod *= Rational(static_cast<unsigned long>(rank(gm))) / dm;
      curv_prod *= xs[m].operator_trace(gm) / dm;
    }
    std::ostringstream os;
    os << "q=" << q.str() << ": chi " << to_string(chi) << " = product "
       << to_string(chi_prod) << ", curv " << to_string(curv)
       << " = product " << to_string(curv_prod);
    if (chi != chi_prod || curv != curv_prod)
      rep.fail(os.str());
    else
      rep.details.push_back(os.str());
  }
  return rep;
}

namespace {

// psi placed in the factors [offset, offset + k_psi) of `shape`, vacuum
// elsewhere.
FockVector embed(const FockVector& psi, const Shape& shape,
                 std::size_t offset) {
  FockVector out(shape, psi.mult_dim());
  for (const auto& [key, c] : psi.terms()) {
    BasisKey k2{vacuum_word(shape.k()), key.mult};
    for (std::size_t i = 0; i < key.word.words.size(); ++i)
      k2.word.words[offset + i] = key.word.words[i];
    out.add(k2, c);
  }
  return out;
}

}  // namespace

CheckReport coinvariant_multiplicativity_check(
    const std::vector<GradedSubspace>& ms,
    const std::vector<MultiDegree>& q_max) {
  if (ms.empty() || ms.size() != q_max.size())
    throw PreconditionError(
        "coinvariant_multiplicativity_check: one q_max per subspace");
  CheckReport rep;
  rep.name = "coinvariant-multiplicativity";
  std::vector<int> n;
  std::vector<std::size_t> sizes;
  bool all_suffix = true;
  for (std::size_t m = 0; m < ms.size(); ++m) {
    if (ms[m].mult_dim() != 1)
      throw PreconditionError("coinvariant tensor needs scalar subspaces");
    require_shape(ms[m].shape(), q_max[m]);
    n.insert(n.end(), ms[m].shape().counts().begin(),
             ms[m].shape().counts().end());
    sizes.push_back(ms[m].shape().k());
    all_suffix = all_suffix &&
                 ms[m].kind() == GradedSubspace::Kind::kComplementTensor;
  }
  const Shape shape(n);
  std::vector<FockVector> gens;
  std::size_t offset = 0;
  for (const auto& m : ms) {
    for (const FockVector& g : m.spanning_generators())
      gens.push_back(embed(g, shape, offset));
    offset += m.shape().k();
  }
  std::vector<InvariantSource> tensors{
      CoinvariantSource{GradedSubspace::from_generators(shape, 1, gens)}};
  if (all_suffix) {
    std::vector<SuffixFactor> factors;
    for (const auto& m : ms)
      factors.insert(factors.end(), m.factors().begin(), m.factors().end());
    tensors.push_back(
        CoinvariantSource{GradedSubspace::complement_tensor(factors, 1)});
  }

  std::vector<InvariantSequence> parts;
  for (std::size_t m = 0; m < ms.size(); ++m)
    parts.push_back(chi_sequence(CoinvariantSource{ms[m]}, q_max[m]));
  const MultiDegree q_all = concat_degrees(q_max);
  for (std::size_t v = 0; v < tensors.size(); ++v) {
    const InvariantSequence seq = chi_sequence(tensors[v], q_all);
    const char* label = v == 0 ? "generated" : "complement-tensor";
    for (const auto& e : seq.entries) {
      const std::vector<MultiDegree> qs = split_degree(e.q, sizes);
      Rational prod = 1, level_prod = 1;
      for (std::size_t m = 0; m < ms.size(); ++m) {
        const SequenceEntry* pe = parts[m].find(qs[m]);
        prod *= pe->value;
        level_prod *= pe->level_value;
      }
      std::ostringstream os;
      os << label << " q=" << e.q.str() << ": chi " << to_string(e.value)
         << " = product " << to_string(prod) << ", level "
         << to_string(e.level_value) << " = product "
         << to_string(level_prod);
      if (e.value != prod || e.level_value != level_prod)
        rep.fail(os.str());
      else
        rep.details.push_back(os.str());
    }
  }
  return rep;
}

CheckReport perturbation_check(const PolyballTuple& t, const Matrix& basis,
                               PerturbationForm form,
                               const MultiDegree& q_max) {
  require_shape(t.shape(), q_max);
  require_euler(t.shape());
  CheckReport rep;
  const bool invariant = form == PerturbationForm::kInvariant;
  rep.name = invariant ? "perturbation-invariant" : "perturbation-coinvariant";
  const PolyballTuple sub =
      invariant ? restrict_invariant(t, basis) : compress_coinvariant(t, basis);
  const PolyballMembership member = is_in_polyball(sub);
  if (!member.member)
    throw PreconditionError(std::string(invariant ? "T|_M" : "P_M T|_M") +
                            " is not in the polyball");
  const Rational codim(static_cast<unsigned long>(t.dim() - basis.cols()));
  for (const MultiDegree& q : box(q_max)) {
    const Rational den(dim_leq(t.shape(), q));
    const Rational chi_t =
        Rational(static_cast<unsigned long>(rank(berezin_gram(t, q)))) / den;
    const Rational chi_m =
        Rational(static_cast<unsigned long>(rank(berezin_gram(sub, q)))) / den;
    Rational bound;
    if (invariant) {
      Integer factor = 1;
      for (std::size_t i = 0; i < q.k(); ++i)
        factor *= 1 + ipow(static_cast<std::uint64_t>(t.shape().n(i)), q[i] + 1);
      bound = Rational(factor) / den * codim;
    } else {
      bound = codim / den;
    }
    const Rational diff = abs(chi_t - chi_m);
    std::ostringstream os;
    os << "q=" << q.str() << ": |" << to_string(chi_t) << " - "
       << to_string(chi_m) << "| = " << to_string(diff)
       << " <= " << to_string(bound);
    if (diff > bound)
      rep.fail(os.str());
    else
      rep.details.push_back(os.str());
  }
  return rep;
}

CheckReport gbc_check(const InvariantSource& src, const MultiDegree& q_max,
                      const EvalOptions& opts) {
  CheckReport rep;
  rep.name = "gbc";
  if (const auto* ts = std::get_if<TupleSource>(&src)) {
    if (!ts->grading)
      throw PreconditionError(
          "gbc_check needs a graded source; this tuple has no grading. "
          "Compare the chi and curv sequences without an equality claim");
    const GradingSplit split = grading_split(ts->tuple, *ts->grading);
    rep.details.push_back("support window c=" + split.lower.str() +
                          " d=" + split.upper.str() + ", dim H_0=" +
                          std::to_string(split.h0_indices.size()));
    if (!split.certificate.member) {
      rep.fail("T|_{H_0} is not in the polyball");
      return rep;
    }
    if (split.h0_indices.empty()) {
      rep.fail("H_0 is zero");
      return rep;
    }
    for (const MultiDegree& q : box(q_max)) {
      const Matrix g = berezin_gram(split.restricted, q);
      const Rational tr = split.restricted.operator_trace(g);
      const Rational rk(static_cast<unsigned long>(rank(g)));
      const std::string line = "q=" + q.str() + ": trace=" + to_string(tr) +
                               " rank=" + to_string(rk);
      if (tr != rk)
        rep.fail(line);
      else
        rep.details.push_back(line);
    }
    return rep;
  }
  const InvariantSequence chi = chi_sequence(src, q_max, opts);
  const InvariantSequence curv = curv_sequence(src, q_max, opts);
  for (const auto& f : chi.failures) rep.fail(f);
  for (std::size_t i = 0; i < chi.entries.size(); ++i) {
    const auto& a = chi.entries[i];
    const auto& b = curv.entries[i];
    const std::string line = "q=" + a.q.str() + ": trace=" +
                             to_string(b.numerator) +
                             " rank=" + to_string(a.numerator);
    if (a.numerator != b.numerator)
      rep.fail(line);
    else
      rep.details.push_back(line);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Factor permutations

MultiDegree permute_degree(const MultiDegree& q,
                           const std::vector<std::size_t>& perm) {
  std::vector<int> out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[i] = q[perm[i]];
  return MultiDegree(std::move(out));
}

namespace {

Shape permute_shape(const Shape& s, const std::vector<std::size_t>& perm) {
  std::vector<int> n(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) n[i] = s.n(perm[i]);
  return Shape(std::move(n));
}

FockVector permute_vector(const FockVector& v, const Shape& shape,
                          const std::vector<std::size_t>& perm) {
  FockVector out(shape, v.mult_dim());
  for (const auto& [key, c] : v.terms()) {
    BasisKey k2{MultiWord{std::vector<Word>(perm.size())}, key.mult};
    for (std::size_t i = 0; i < perm.size(); ++i)
      k2.word.words[i] = key.word.words[perm[i]];
    out.add(k2, c);
  }
  return out;
}

void check_perm(const std::vector<std::size_t>& perm, std::size_t k) {
  std::vector<std::size_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i || sorted.size() != k)
      throw PreconditionError("not a permutation of the factors");
}

}  // namespace

InvariantSource permute_source(const InvariantSource& src,
                               const std::vector<std::size_t>& perm) {
  const Shape& shape = source_shape(src);
  check_perm(perm, shape.k());
  const Shape new_shape = permute_shape(shape, perm);
  if (const auto* ts = std::get_if<TupleSource>(&src)) {
    std::vector<std::vector<Matrix>> ops;
    for (std::size_t i : perm) ops.push_back(ts->tuple.ops()[i]);
    std::optional<Matrix> metric;
    if (ts->tuple.has_metric()) metric = ts->tuple.metric();
    TupleSource out{PolyballTuple(new_shape, ts->tuple.dim(), std::move(ops),
                                  std::move(metric)),
                    std::nullopt};
    if (ts->grading) {
      Grading g;
      for (const auto& d : ts->grading->degree_of)
        g.degree_of.push_back(permute_degree(d, perm));
      out.grading = std::move(g);
    }
    return out;
  }
  const GradedSubspace& m = std::visit(
      [](const auto& s) -> const GradedSubspace& {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, TupleSource>)
          throw Error("unreachable");
        else
          return s.subspace;
      },
      src);
  GradedSubspace permuted = GradedSubspace::full(new_shape, m.mult_dim());
  switch (m.kind()) {
    case GradedSubspace::Kind::kFull:
      break;
    case GradedSubspace::Kind::kGenerated: {
      std::vector<FockVector> gens;
      for (const auto& g : m.generators())
        gens.push_back(permute_vector(g, new_shape, perm));
      permuted = GradedSubspace::from_generators(new_shape, m.mult_dim(), gens);
      break;
    }
    case GradedSubspace::Kind::kComplementTensor: {
      std::vector<SuffixFactor> factors;
      for (std::size_t i : perm) factors.push_back(m.factors()[i]);
      permuted = GradedSubspace::complement_tensor(factors, m.mult_dim());
      break;
    }
  }
  if (std::holds_alternative<CoinvariantSource>(src))
    return CoinvariantSource{permuted};
  return RestrictionSource{permuted};
}

}  // namespace polyeuler

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

// Floating point projection traces for non-graded generators.

#include <Eigen/Dense>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseQR>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polyeuler/subspace.hpp"

namespace polyeuler {
namespace {

struct TraceSample {
  double value = 0.0;
  double condition = 1.0;  // max/min |R_ii| over the retained pivots
};

// trace[P P_{<=q}] where P projects onto the column space of `a`; the rows
// listed in `low_rows` are the coordinates of H_{<=q}.
TraceSample range_trace(const Eigen::SparseMatrix<double>& a,
                        const std::vector<int>& low_rows) {
  TraceSample out;
  const Eigen::Index m = a.rows();
  Eigen::MatrixXd selectors = Eigen::MatrixXd::Zero(m, low_rows.size());
  for (std::size_t j = 0; j < low_rows.size(); ++j)
    selectors(low_rows[j], static_cast<Eigen::Index>(j)) = 1.0;

  Eigen::Index rank = 0;
  Eigen::MatrixXd projected;
  Eigen::VectorXd diag;
  if (a.rows() >= a.cols()) {
    Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> qr;
    qr.setPivotThreshold(1e-10);
    qr.compute(a);
    if (qr.info() != Eigen::Success)
      throw Error("numeric_mode_trace: sparse QR failed");
    rank = qr.rank();
    projected = qr.matrixQ().transpose() * selectors;
    diag = Eigen::MatrixXd(qr.matrixR()).diagonal();
  } else {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
    qr.setThreshold(1e-10);
    qr.compute(Eigen::MatrixXd(a));
    rank = qr.rank();
    projected = qr.householderQ().transpose() * selectors;
    diag = qr.matrixR().diagonal();
  }
  out.value = projected.topRows(rank).squaredNorm();
  double hi = 0.0, lo = INFINITY;
  for (Eigen::Index i = 0; i < rank; ++i) {
    hi = std::max(hi, std::abs(diag(i)));
    lo = std::min(lo, std::abs(diag(i)));
  }
  out.condition = rank > 0 ? hi / lo : 1.0;
  return out;
}

}  // namespace

NumericTraceReport numeric_mode_trace(const std::vector<FockVector>& gens,
                                      const MultiDegree& q,
                                      const MultiDegree& inner_cutoff) {
  if (q.k() != inner_cutoff.k())
    throw PreconditionError("numeric_mode_trace: multidegree mismatch");
  if (!q.leq(inner_cutoff))
    throw PreconditionError("numeric_mode_trace: inner_cutoff must be >= q");

  // Cutoff schedule: from q, raise every coordinate by one until the
  // requested cutoff is reached.
  NumericTraceReport report;
  for (MultiDegree c = q;;) {
    report.cutoffs.push_back(c);
    if (c == inner_cutoff) break;
    for (std::size_t i = 0; i < c.k(); ++i)
      c[i] = std::min(c[i] + 1, inner_cutoff[i]);
  }

  if (gens.empty()) {
    report.values.assign(report.cutoffs.size(), 0.0);
    report.diagnostic = "approximate; no generators";
    return report;
  }
  const Shape& shape = gens.front().shape();
  const int r = gens.front().mult_dim();
  for (const auto& g : gens)
    if (!(g.shape() == shape) || g.mult_dim() != r)
      throw PreconditionError("numeric_mode_trace: generator shape mismatch");
  if (q.k() != shape.k())
    throw PreconditionError("numeric_mode_trace: multidegree/shape mismatch");

  constexpr double kConditionLimit = 1e10;
  double worst = 1.0;
  for (const MultiDegree& cutoff : report.cutoffs) {
    std::map<BasisKey, int> row_of;
    std::vector<Eigen::Triplet<double>> entries;
    int col = 0;
    for (const MultiDegree& s : box(cutoff))
      for (const MultiWord& alpha : enumerate_basis(shape, s))
        for (const auto& g : gens) {
          const FockVector shifted = apply_left_word(alpha, g);
          for (const auto& [key, c] : shifted.terms()) {
            auto [it, inserted] =
                row_of.try_emplace(key, static_cast<int>(row_of.size()));
            entries.emplace_back(it->second, col, c.get_d());
          }
          ++col;
        }
    // Coordinates of H_{<=q} x E, including those the vectors miss.
    std::vector<int> low_rows;
    for (const MultiDegree& s : box(q))
      for (const MultiWord& w : enumerate_basis(shape, s))
        for (int m = 1; m <= r; ++m) {
          auto [it, inserted] = row_of.try_emplace(
              BasisKey{w, m}, static_cast<int>(row_of.size()));
          low_rows.push_back(it->second);
        }
    Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(row_of.size()),
                                  col);
    a.setFromTriplets(entries.begin(), entries.end());
    a.makeCompressed();
    TraceSample sample = range_trace(a, low_rows);
    report.values.push_back(sample.value);
    worst = std::max(worst, sample.condition);
  }
  if (report.values.size() >= 2)
    report.last_increment =
        report.values.back() - report.values[report.values.size() - 2];
  report.ill_conditioned = worst > kConditionLimit;
  std::ostringstream os;
  os << "approximate; pivot ratio " << worst;
  if (report.ill_conditioned)
    os << " exceeds " << kConditionLimit << ", values are unreliable";
  report.diagnostic = os.str();
  return report;
}

}  // namespace polyeuler

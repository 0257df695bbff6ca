// Copyright 2026 The qrange Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Linear witnesses over input-output correlation tables. A witness matrix w
// scores a table p_{y|x} as sum_{x,y} w_{x,y} p_{y|x}; the threshold
// W(pi, w) = sum_x lambda_max(sum_y w_{x,y} pi_y) is the best score any
// collection of states can reach with the measurement pi, so a score above
// W certifies that no qubit preparation explains the table.

#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qrange/range.hpp"

namespace qrange {

struct WitnessMatrix {
    Matrix entries;  // m rows (inputs) x n columns (outcomes)
};

inline WitnessMatrix make_witness_matrix(Matrix m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw InvalidWitness("witness matrix must be non-empty");
    for (double v : m.data())
        if (!std::isfinite(v)) throw InvalidWitness("witness entries must be finite");
    return {std::move(m)};
}

struct CorrelationTable {
    Matrix entries;  // m rows, each a probability distribution over n outcomes
};

inline CorrelationTable make_correlation_table(Matrix m, double row_tol = kValidationTol,
                                               double entry_floor = -1e-12) {
    if (m.rows() == 0 || m.cols() == 0)
        throw InvalidTable("correlation table must be non-empty");
    for (std::size_t x = 0; x < m.rows(); ++x) {
        double sum = 0.0;
        for (std::size_t y = 0; y < m.cols(); ++y) {
            if (!(m(x, y) >= entry_floor))
                throw InvalidTable("table row " + std::to_string(x) +
                                   " has a negative entry");
            sum += m(x, y);
        }
        if (std::abs(sum - 1.0) > row_tol)
            throw InvalidTable("table row " + std::to_string(x) + " sums to " +
                               std::to_string(sum));
    }
    return {std::move(m)};
}

// W(pi, w): the maximum of sum_{x,y} w_{x,y} p(y|x) over all state choices,
// row by row, using lambda_max(a*I + b.sigma) = a + ||b||.
inline double witness_threshold(const Povm& p, const WitnessMatrix& w) {
    if (w.entries.cols() != p.size())
        throw DimensionMismatch("witness columns != outcome count");
    double total = 0.0;
    for (std::size_t x = 0; x < w.entries.rows(); ++x)
        total += row_threshold(p, w.entries.row(x));
    return total;
}

// Score minus threshold. Positive certifies that the table is not
// reproducible by the measurement; zero or negative is inconclusive.
inline double compatibility_gap(const Povm& p, const CorrelationTable& table,
                                const WitnessMatrix& w) {
    if (table.entries.rows() != w.entries.rows() ||
        table.entries.cols() != w.entries.cols())
        throw DimensionMismatch("table and witness shapes differ");
    if (w.entries.cols() != p.size())
        throw DimensionMismatch("witness columns != outcome count");
    double score = 0.0;
    for (std::size_t x = 0; x < w.entries.rows(); ++x)
        score += dot(w.entries.row(x), table.entries.row(x));
    return score - witness_threshold(p, w);
}

// Row-by-row exact membership of a correlation table; the table is
// reproducible iff every verdict is Inside or Boundary. Results are in input
// order.
inline std::vector<Verdict> test_correlation(const Povm& p, const CorrelationTable& table,
                                             double tol = 1e-9) {
    if (table.entries.cols() != p.size())
        throw DimensionMismatch("table columns != outcome count");
    const RangeModel model = build_range_model(p);
    std::vector<Verdict> out;
    out.reserve(table.entries.rows());
    for (std::size_t x = 0; x < table.entries.rows(); ++x) {
        auto row = table.entries.row(x);
        out.push_back(membership(model, Vec(row.begin(), row.end()), tol));
    }
    return out;
}

}  // namespace qrange

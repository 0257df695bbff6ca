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

// Reference measurements with closed-form range tests:
//
//   trine           3 outcomes   (1/3)(I + n_y.sigma), n_y at 120 deg in XZ
//   tetrahedron     4 outcomes   (1/4)(I + n_y.sigma), tetrahedral n_y
//   square-mub      4 outcomes   (1/4)(I + n.sigma), n in {+z,-z,+x,-x}
//   octahedron-mub  6 outcomes   (1/6)(I + n.sigma), n in {+z,-z,+x,-x,+y,-y}
//
// MUB outcomes are ordered in (+,-) pairs along Z, X, then Y. Under
// depolarizing noise of strength lambda, a distribution q is reachable iff it
// satisfies the kind's affine constraints and a norm bound quadratic in
// lambda; closed_form_membership evaluates exactly those conditions, with no
// matrix algebra, as an independent cross-check of the general test.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "qrange/povm.hpp"

namespace qrange {

enum class CatalogKind { RealSic, ComplexSic, RealMub, ComplexMub };

inline constexpr CatalogKind kAllCatalogKinds[] = {
    CatalogKind::RealSic, CatalogKind::ComplexSic, CatalogKind::RealMub,
    CatalogKind::ComplexMub};

inline std::size_t outcome_count(CatalogKind k) {
    switch (k) {
        case CatalogKind::RealSic: return 3;
        case CatalogKind::ComplexSic: return 4;
        case CatalogKind::RealMub: return 4;
        default: return 6;
    }
}

inline std::string_view catalog_name(CatalogKind k) {
    switch (k) {
        case CatalogKind::RealSic: return "trine";
        case CatalogKind::ComplexSic: return "tetrahedron";
        case CatalogKind::RealMub: return "square-mub";
        default: return "octahedron-mub";
    }
}

inline std::optional<CatalogKind> catalog_from_name(std::string_view name) {
    for (CatalogKind k : kAllCatalogKinds)
        if (name == catalog_name(k)) return k;
    return std::nullopt;
}

// Squared norm of each subnormalized effect vector, ||pi_y>|^2 = Tr[pi_y].
inline double norm_constant(CatalogKind k) {
    switch (k) {
        case CatalogKind::RealSic: return 2.0 / 3.0;
        case CatalogKind::ComplexSic: return 0.5;
        case CatalogKind::RealMub: return 0.5;
        default: return 1.0 / 3.0;
    }
}

// Squared normalized overlap between distinct effects (distinct bases for the
// MUBs): |<pi_y|pi_y'>|^2 = norm_constant^2 * overlap_constant.
inline double overlap_constant(CatalogKind k) {
    switch (k) {
        case CatalogKind::RealSic: return 0.25;
        case CatalogKind::ComplexSic: return 1.0 / 3.0;
        default: return 0.5;  // both MUBs
    }
}

inline Povm make_catalog(CatalogKind k) {
    switch (k) {
        case CatalogKind::RealSic: {
            // Unit vectors at 0, 120, 240 degrees in the XZ plane, scaled by 1/3.
            const double x = std::sqrt(3.0) / 6.0;
            return validate_povm({{1.0 / 3.0, {0.0, 0.0, 1.0 / 3.0}},
                                  {1.0 / 3.0, {x, 0.0, -1.0 / 6.0}},
                                  {1.0 / 3.0, {-x, 0.0, -1.0 / 6.0}}},
                                 "trine");
        }
        case CatalogKind::ComplexSic: {
            // (+-1, +-1, +-1)/sqrt(3) with an even number of minus signs
            // after the first, scaled by 1/4.
            const double c = 1.0 / (4.0 * std::sqrt(3.0));
            return validate_povm({{0.25, {c, c, c}},
                                  {0.25, {c, -c, -c}},
                                  {0.25, {-c, c, -c}},
                                  {0.25, {-c, -c, c}}},
                                 "tetrahedron");
        }
        case CatalogKind::RealMub:
            return validate_povm({{0.25, {0.0, 0.0, 0.25}},
                                  {0.25, {0.0, 0.0, -0.25}},
                                  {0.25, {0.25, 0.0, 0.0}},
                                  {0.25, {-0.25, 0.0, 0.0}}},
                                 "square-mub");
        default: {
            const double c = 1.0 / 6.0;
            return validate_povm({{c, {0.0, 0.0, c}},
                                  {c, {0.0, 0.0, -c}},
                                  {c, {c, 0.0, 0.0}},
                                  {c, {-c, 0.0, 0.0}},
                                  {c, {0.0, c, 0.0}},
                                  {c, {0.0, -c, 0.0}}},
                                 "octahedron-mub");
        }
    }
}

struct NoisyCatalogPovm {
    CatalogKind kind;
    double lambda;
    Povm povm;
};

inline NoisyCatalogPovm make_noisy_catalog(CatalogKind k, double lambda) {
    return {k, lambda, depolarize(make_catalog(k), lambda)};
}

namespace detail {
struct ClosedFormCoeffs {
    double norm_scale;   // coefficient of ||q||^2 in the quadratic condition
    double norm_shift;   // subtracted constant
    double pair_target;  // MUB pair-sum value, 0 for the SICs
};

inline ClosedFormCoeffs closed_form_coeffs(CatalogKind k) {
    switch (k) {
        case CatalogKind::RealSic: return {6.0, 2.0, 0.0};
        case CatalogKind::ComplexSic: return {12.0, 3.0, 0.0};
        case CatalogKind::RealMub: return {8.0, 2.0, 0.5};
        default: return {18.0, 3.0, 1.0 / 3.0};
    }
}
}  // namespace detail

// Closed-form range test for a depolarized catalog measurement. The affine
// conditions are sum(q) = 1 for the SICs and per-basis pair sums for the
// MUBs; the quadratic condition normalizes to
// (norm_scale * ||q||^2 - norm_shift) / lambda^2 <= 1, which matches the
// general pseudoinverse form value exactly. At lambda = 0 the range collapses
// to the single point q = t.
inline Containment closed_form_membership(CatalogKind k, double lambda, const Vec& q,
                                          double tol = 1e-9) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw LambdaOutOfRange("depolarizing strength must lie in [0, 1]");
    const std::size_t n = outcome_count(k);
    if (q.size() != n) throw DimensionMismatch("distribution length != outcome count");

    const double t = 1.0 / static_cast<double>(n);
    if (lambda == 0.0) {
        double dev = 0.0;
        for (double v : q) dev = std::max(dev, std::abs(v - t));
        return dev <= tol ? Containment::Inside : Containment::Outside;
    }

    const auto cf = detail::closed_form_coeffs(k);
    if (cf.pair_target == 0.0) {
        double sum = 0.0;
        for (double v : q) sum += v;
        if (std::abs(sum - 1.0) > tol) return Containment::Outside;
    } else {
        for (std::size_t pair = 0; pair < n / 2; ++pair) {
            const double sum = q[2 * pair] + q[2 * pair + 1];
            if (std::abs(sum - cf.pair_target) > tol) return Containment::Outside;
        }
    }

    double nq = 0.0;
    for (double v : q) nq += v * v;
    const double gamma = (cf.norm_scale * nq - cf.norm_shift) / (lambda * lambda);
    if (std::abs(gamma - 1.0) <= tol) return Containment::Boundary;
    return gamma < 1.0 ? Containment::Inside : Containment::Outside;
}

}  // namespace qrange

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

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace qrange;
using Catch::Approx;

namespace {

// For the mutually-unbiased families, outcomes (2k, 2k+1) form one basis.
bool same_basis(CatalogKind k, std::size_t i, std::size_t j) {
    if (k == CatalogKind::RealSic || k == CatalogKind::ComplexSic) return false;
    return i / 2 == j / 2;
}

}  // namespace

TEST_CASE("catalog names round-trip") {
    for (CatalogKind k : kAllCatalogKinds) {
        const auto back = catalog_from_name(catalog_name(k));
        REQUIRE(back.has_value());
        CHECK(*back == k);
        CHECK(make_catalog(k).label() == catalog_name(k));
        CHECK(make_catalog(k).size() == outcome_count(k));
    }
    CHECK_FALSE(catalog_from_name("bogus").has_value());
}

TEST_CASE("catalog effects satisfy the defining trace relations") {
    for (CatalogKind k : kAllCatalogKinds) {
        const Povm p = make_catalog(k);
        const double n_d = norm_constant(k);
        const double c_d = overlap_constant(k);
        for (std::size_t y = 0; y < p.size(); ++y) {
            // Equal trace...
            CHECK(2.0 * p[y].t == Approx(n_d).margin(1e-15));
            // ...and rank one (pure): det = t^2 - ||s||^2 = 0.
            CHECK(p[y].t * p[y].t - dot3(p[y].s, p[y].s) ==
                  Approx(0.0).margin(1e-16));
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            for (std::size_t j = i + 1; j < p.size(); ++j) {
                const double tr = qtest::trace_product(p, i, j);
                if (same_basis(k, i, j)) {
                    CHECK(tr == Approx(0.0).margin(1e-15));  // orthogonal pair
                } else {
                    CHECK(tr == Approx(n_d * n_d * c_d).margin(1e-15));
                }
            }
        }
    }
}

TEST_CASE("depolarized catalog scales Q by lambda squared") {
    for (CatalogKind k : kAllCatalogKinds) {
        const RangeModel base = build_range_model(make_catalog(k));
        const NoisyCatalogPovm noisy = make_noisy_catalog(k, 0.6);
        CHECK(noisy.kind == k);
        CHECK(noisy.lambda == 0.6);
        const RangeModel nm = build_range_model(noisy.povm);
        for (std::size_t i = 0; i < base.t.size(); ++i)
            for (std::size_t j = 0; j < base.t.size(); ++j)
                CHECK(nm.Q(i, j) == Approx(0.36 * base.Q(i, j)).margin(1e-15));
    }
}

TEST_CASE("closed-form membership on documented boundary points") {
    CHECK(closed_form_membership(CatalogKind::RealSic, 1.0,
                                 {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0}) ==
          Containment::Boundary);
    CHECK(closed_form_membership(CatalogKind::ComplexSic, 1.0,
                                 {0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0}) ==
          Containment::Boundary);
    CHECK(closed_form_membership(CatalogKind::RealMub, 1.0,
                                 {0.5, 0.0, 0.25, 0.25}) == Containment::Boundary);
    CHECK(closed_form_membership(
              CatalogKind::ComplexMub, 1.0,
              {1.0 / 3.0, 0.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0}) ==
          Containment::Boundary);
}

TEST_CASE("closed-form membership catches affine violations") {
    // Total mass off by ten percent.
    CHECK(closed_form_membership(CatalogKind::RealSic, 1.0, {0.5, 0.3, 0.1}) ==
          Containment::Outside);
    // Mass is one but the per-basis marginals are wrong.
    CHECK(closed_form_membership(CatalogKind::RealMub, 1.0,
                                 {0.5, 0.25, 0.125, 0.125}) ==
          Containment::Outside);
}

TEST_CASE("closed-form membership interior and exterior points") {
    CHECK(closed_form_membership(CatalogKind::RealSic, 1.0, {0.4, 0.3, 0.3}) ==
          Containment::Inside);
    CHECK(closed_form_membership(CatalogKind::RealSic, 1.0, {1.0, 0.0, 0.0}) ==
          Containment::Outside);
    // Strong noise shrinks the range past the same interior point
    // (it sits on the boundary exactly at lambda = 0.2).
    CHECK(closed_form_membership(CatalogKind::RealSic, 0.1, {0.4, 0.3, 0.3}) ==
          Containment::Outside);
    CHECK(closed_form_membership(CatalogKind::RealSic, 0.2, {0.4, 0.3, 0.3}) ==
          Containment::Boundary);
}

TEST_CASE("fully depolarized ranges collapse to the uniform point") {
    for (CatalogKind k : kAllCatalogKinds) {
        const std::size_t n = outcome_count(k);
        const Vec uniform(n, 1.0 / static_cast<double>(n));
        CHECK(closed_form_membership(k, 0.0, uniform) == Containment::Inside);
        Vec off = uniform;
        off[0] += 1e-6;
        off[1] -= 1e-6;
        CHECK(closed_form_membership(k, 0.0, off) == Containment::Outside);
    }
}

TEST_CASE("closed-form guards") {
    CHECK_THROWS_AS(closed_form_membership(CatalogKind::RealSic, -0.1, {1, 0, 0}),
                    LambdaOutOfRange);
    CHECK_THROWS_AS(closed_form_membership(CatalogKind::RealSic, 1.1, {1, 0, 0}),
                    LambdaOutOfRange);
    CHECK_THROWS_AS(closed_form_membership(CatalogKind::RealSic, 0.5, {1, 0}),
                    DimensionMismatch);
}

TEST_CASE("closed form agrees with the general membership test") {
    Rng rng(13579);
    int checked = 0;
    for (CatalogKind k : kAllCatalogKinds) {
        const std::size_t n = outcome_count(k);
        const double pair_sum = detail::closed_form_coeffs(k).pair_target;
        for (const double lambda : {0.0, 0.3, 0.7, 1.0}) {
            const RangeModel m = build_range_model(make_noisy_catalog(k, lambda).povm);
            for (int iter = 0; iter < 500; ++iter) {
                // Half the draws hit the affine slice where the quadratic
                // condition is the decisive one.
                Vec q;
                if (pair_sum > 0.0 && iter % 2 == 0)
                    q = qtest::random_pair_slice(rng, n, pair_sum);
                else
                    q = qtest::random_simplex(rng, n);

                const Verdict v = membership(m, q);
                if (std::abs(v.quad_form - 1.0) <= 1e-8) continue;
                if (v.equality_residual > 1e-10 && v.equality_residual < 1e-7)
                    continue;
                if (lambda == 0.0) {
                    const double dist = norm2(sub(q, m.t));
                    if (dist > 1e-10 && dist < 1e-7) continue;
                }
                ++checked;
                CHECK(closed_form_membership(k, lambda, q) ==
                      to_containment(v.status));
            }
        }
    }
    CHECK(checked > 6000);
}

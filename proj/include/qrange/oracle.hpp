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

// State-space oracle for range membership, plus deterministic samplers.
//
// Instead of the ellipsoid form used by the range module, membership is
// decided here by solving for a Bloch vector directly: q is reachable iff
// S r = q - t has a solution with ||r|| <= 1. The minimum-norm least-squares
// solution r* = S^+ (q - t) settles both questions at once, because every
// other solution differs from r* by a kernel component orthogonal to it and
// can only be longer. This path never touches Q = S S^T, its pseudoinverse,
// or the ellipsoid inequality, so the two routes cross-validate each other.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qrange/povm.hpp"

namespace qrange {

//------------------------------------------------------------------------
// deterministic random source
//------------------------------------------------------------------------

// Thin wrapper over mt19937_64 that derives doubles from raw bits, so the
// seed-to-output mapping does not depend on the standard library's
// distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Standard normal via the Marsaglia polar method.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s <= 0.0 || s >= 1.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    Vec3 unit3() {
        for (;;) {
            Vec3 v = {normal(), normal(), normal()};
            const double n = norm3(v);
            if (n > 1e-12) return scale3(v, 1.0 / n);
        }
    }

    // Uniform in the closed unit ball.
    Vec3 ball3() { return scale3(unit3(), std::cbrt(uniform())); }

  private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

//------------------------------------------------------------------------
// states and the distributions they generate
//------------------------------------------------------------------------

struct BlochState {
    Vec3 r = {0, 0, 0};
};

inline BlochState make_bloch_state(const Vec3& r, double tol = kValidationTol) {
    if (norm3(r) > 1.0 + tol) throw InvalidState("Bloch vector norm exceeds one");
    return {r};
}

// q_y = t_y + s_y . r, the outcome distribution of state r under p.
inline Vec distribution_for_state(const Povm& p, const BlochState& st) {
    Vec q(p.size());
    for (std::size_t y = 0; y < p.size(); ++y) q[y] = p[y].t + dot3(p[y].s, st.r);
    return q;
}

//------------------------------------------------------------------------
// feasibility oracle
//------------------------------------------------------------------------

struct FeasibilityResult {
    Containment status;
    Vec3 state;          // minimum-norm candidate r*
    double residual;     // || S r* - (q - t) ||
    double state_norm;   // || r* ||
};

inline FeasibilityResult feasibility_analysis(const Povm& p, const Vec& q,
                                              double tol = 1e-9) {
    const std::size_t n = p.size();
    if (q.size() != n) throw DimensionMismatch("distribution length != outcome count");

    // Normal equations on the 3x3 side: r* = (S^T S)^+ S^T (q - t).
    SymMatrix M(3);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a; b < 3; ++b) {
            double acc = 0.0;
            for (std::size_t y = 0; y < n; ++y) acc += p[y].s[a] * p[y].s[b];
            M.set(a, b, acc);
        }
    Vec d(n);
    for (std::size_t y = 0; y < n; ++y) d[y] = q[y] - p[y].t;
    Vec rhs(3, 0.0);
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t a = 0; a < 3; ++a) rhs[a] += p[y].s[a] * d[y];

    const PseudoInverse Mp = pinv_sym(M);
    const Vec r = matvec(Mp.pinv, rhs);

    double res2 = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
        const double ry = p[y].s[0] * r[0] + p[y].s[1] * r[1] + p[y].s[2] * r[2] - d[y];
        res2 += ry * ry;
    }

    FeasibilityResult out;
    out.state = {r[0], r[1], r[2]};
    out.residual = std::sqrt(res2);
    out.state_norm = norm2(r);
    if (out.residual > tol)
        out.status = Containment::Outside;
    else if (std::abs(out.state_norm - 1.0) <= tol)
        out.status = Containment::Boundary;
    else
        out.status = out.state_norm < 1.0 ? Containment::Inside : Containment::Outside;
    return out;
}

inline Containment feasibility_membership(const Povm& p, const Vec& q, double tol = 1e-9) {
    return feasibility_analysis(p, q, tol).status;
}

//------------------------------------------------------------------------
// samplers
//------------------------------------------------------------------------

enum class SampleMode {
    PureFibonacci,  // Fibonacci lattice on the unit sphere; seed is unused
    MixedUniform,   // uniform in the Bloch ball
};

inline std::vector<Vec> sample_distributions(const Povm& p, std::size_t count,
                                             SampleMode mode, std::uint64_t seed) {
    std::vector<Vec> out;
    out.reserve(count);
    if (mode == SampleMode::PureFibonacci) {
        const double golden_angle = 3.14159265358979323846 * (3.0 - std::sqrt(5.0));
        for (std::size_t i = 0; i < count; ++i) {
            const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) /
                                       static_cast<double>(count);
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden_angle * static_cast<double>(i);
            out.push_back(distribution_for_state(
                p, {{rho * std::cos(phi), rho * std::sin(phi), z}}));
        }
    } else {
        Rng rng(seed);
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(distribution_for_state(p, {rng.ball3()}));
    }
    return out;
}

//------------------------------------------------------------------------
// random measurements
//------------------------------------------------------------------------

// Draws n random positive effects E_y and renormalizes to a POVM as
// T^{-1/2} E_y T^{-1/2} with T = sum_y E_y. T^{-1/2} is computed in closed
// form from the 2x2 spectral decomposition. Draws whose T is near singular
// are rejected and retried; after 100 failures DegenerateDraw is thrown.
inline Povm random_povm(std::size_t n, std::uint64_t seed) {
    if (n < kMinOutcomes || n > kMaxDim)
        throw InvalidArity("random_povm: outcome count must lie in [2, 16]");
    Rng rng(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<Effect> raw;
        raw.reserve(n);
        double a = 0.0;
        Vec3 b = {0, 0, 0};
        for (std::size_t y = 0; y < n; ++y) {
            const double t = rng.uniform();
            const Vec3 s = scale3(rng.unit3(), t * rng.uniform());
            raw.push_back({t, s});
            a += t;
            b = add3(b, s);
        }
        const double bn = norm3(b);
        if (a - bn <= 1e-6 * a) continue;  // T too close to singular

        const double fp = 1.0 / std::sqrt(a + bn);
        const double fm = 1.0 / std::sqrt(a - bn);
        const double alpha = 0.5 * (fp + fm);
        const Vec3 beta = (bn > 1e-300) ? scale3(b, 0.5 * (fp - fm) / bn)
                                        : Vec3{0, 0, 0};
        const Mat2c root = bloch_to_matrix(alpha, beta);

        std::vector<Effect> effects;
        effects.reserve(n);
        for (const Effect& e : raw)
            effects.push_back(effect_from_matrix(root * bloch_to_matrix(e.t, e.s) * root));
        return validate_povm(std::move(effects));
    }
    throw DegenerateDraw("random_povm: repeated singular normalizations");
}

}  // namespace qrange

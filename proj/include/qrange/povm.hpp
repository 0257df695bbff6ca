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

// Qubit measurement effects in Bloch form. An effect pi = t*I + s.sigma is
// stored as the pair (t, s); this is the canonical internal representation,
// with 2x2 complex matrices appearing only at the I/O boundary.

#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qrange/linalg.hpp"

namespace qrange {

inline constexpr double kValidationTol = 1e-9;
inline constexpr std::size_t kMinOutcomes = 2;

//------------------------------------------------------------------------
// effects
//------------------------------------------------------------------------

struct Effect {
    double t = 0.0;       // half trace
    Vec3 s = {0, 0, 0};   // half Pauli components
};

// t - ||s||: nonnegative iff the effect is a positive operator.
inline double positivity_margin(const Effect& e) { return e.t - norm3(e.s); }

// (1 - t) - ||s||: nonnegative iff the effect is bounded above by the identity.
inline double identity_margin(const Effect& e) { return (1.0 - e.t) - norm3(e.s); }

//------------------------------------------------------------------------
// 2x2 complex matrices (I/O boundary and test oracles only)
//------------------------------------------------------------------------

struct Mat2c {
    std::complex<double> m00, m01, m10, m11;
};

inline Mat2c operator*(const Mat2c& a, const Mat2c& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

inline std::complex<double> trace(const Mat2c& a) { return a.m00 + a.m11; }

inline Mat2c adjoint(const Mat2c& a) {
    return {std::conj(a.m00), std::conj(a.m10), std::conj(a.m01), std::conj(a.m11)};
}

// Largest entry magnitude of the anti-Hermitian part (M - M^dagger)/2.
inline double hermiticity_defect(const Mat2c& m) {
    const Mat2c adj = adjoint(m);
    double d = 0.0;
    d = std::max(d, 0.5 * std::abs(m.m00 - adj.m00));
    d = std::max(d, 0.5 * std::abs(m.m01 - adj.m01));
    d = std::max(d, 0.5 * std::abs(m.m10 - adj.m10));
    d = std::max(d, 0.5 * std::abs(m.m11 - adj.m11));
    return d;
}

// a*I + v.sigma as an explicit matrix.
inline Mat2c bloch_to_matrix(double a, const Vec3& v) {
    return {{a + v[2], 0.0},
            {v[0], -v[1]},
            {v[0], v[1]},
            {a - v[2], 0.0}};
}

inline Mat2c effect_to_matrix(const Effect& e) { return bloch_to_matrix(e.t, e.s); }

namespace detail {
// Bloch decomposition of a Hermitian matrix; only hermiticity is enforced.
inline Effect decompose_hermitian(const Mat2c& m, double tol) {
    if (hermiticity_defect(m) > tol)
        throw NotHermitian("effect matrix is not Hermitian within tolerance");
    Effect e;
    e.t = 0.5 * (m.m00.real() + m.m11.real());
    // Average the two off-diagonal entries; for exactly Hermitian input this
    // reduces to (Re m01, -Im m01, .).
    e.s = {0.5 * (m.m01.real() + m.m10.real()),
           0.5 * (m.m10.imag() - m.m01.imag()),
           0.5 * (m.m00.real() - m.m11.real())};
    return e;
}
}  // namespace detail

// Bloch form of a Hermitian positive 2x2 matrix.
inline Effect effect_from_matrix(const Mat2c& m, double tol = kValidationTol) {
    Effect e = detail::decompose_hermitian(m, tol);
    if (norm3(e.s) > e.t + tol)
        throw NotPositive("effect matrix has a negative eigenvalue");
    return e;
}

//------------------------------------------------------------------------
// POVMs
//------------------------------------------------------------------------

class Povm;
Povm validate_povm(std::vector<Effect> effects, std::string label, double tol);
Povm depolarize(const Povm& p, double lambda);

// A validated n-outcome qubit measurement. Instances are immutable and only
// come out of validate_povm (or operations that preserve validity), so a Povm
// in hand always satisfies positivity and completeness.
class Povm {
  public:
    std::size_t size() const { return effects_.size(); }
    const Effect& operator[](std::size_t y) const { return effects_[y]; }
    const std::vector<Effect>& effects() const { return effects_; }
    const std::string& label() const { return label_; }

  private:
    Povm(std::vector<Effect> effects, std::string label)
        : effects_(std::move(effects)), label_(std::move(label)) {}

    friend Povm validate_povm(std::vector<Effect>, std::string, double);
    friend Povm depolarize(const Povm&, double);

    std::vector<Effect> effects_;
    std::string label_;
};

// Checks per-effect positivity and the completeness sums, then wraps the
// effects. Zero effects (t = 0, s = 0) are accepted.
inline Povm validate_povm(std::vector<Effect> effects, std::string label = {},
                          double tol = kValidationTol) {
    const std::size_t n = effects.size();
    if (n < kMinOutcomes || n > kMaxDim)
        throw InvalidArity("POVM must have between 2 and 16 outcomes, got " +
                           std::to_string(n));

    for (std::size_t y = 0; y < n; ++y) {
        const Effect& e = effects[y];
        if (e.t < -tol || e.t > 1.0 + tol)
            throw PositivityViolation("effect " + std::to_string(y) +
                                          ": trace component outside [0, 1]",
                                      y);
        if (positivity_margin(e) < -tol)
            throw PositivityViolation("effect " + std::to_string(y) +
                                          ": not a positive operator",
                                      y);
        if (identity_margin(e) < -tol)
            throw PositivityViolation("effect " + std::to_string(y) +
                                          ": exceeds the identity",
                                      y);
    }

    double st = -1.0;
    Vec3 ss = {0, 0, 0};
    for (const Effect& e : effects) {
        st += e.t;
        ss = add3(ss, e.s);
    }
    if (std::abs(st) > tol || std::abs(ss[0]) > tol || std::abs(ss[1]) > tol ||
        std::abs(ss[2]) > tol)
        throw CompletenessViolation("effects do not sum to the identity",
                                    {st, ss[0], ss[1], ss[2]});

    return Povm(std::move(effects), std::move(label));
}

// Heisenberg picture of the depolarizing channel: each effect (t, s) maps to
// (t, lambda * s). Validity is preserved exactly, so no re-validation happens.
inline Povm depolarize(const Povm& p, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw LambdaOutOfRange("depolarizing strength must lie in [0, 1]");
    std::vector<Effect> effects;
    effects.reserve(p.size());
    for (const Effect& e : p.effects()) effects.push_back({e.t, scale3(e.s, lambda)});
    return Povm(std::move(effects), p.label());
}

//------------------------------------------------------------------------
// shared helpers
//------------------------------------------------------------------------

// Coarse answer of a membership query.
enum class Containment { Inside, Boundary, Outside };

inline std::string_view to_string(Containment c) {
    switch (c) {
        case Containment::Inside: return "inside";
        case Containment::Boundary: return "boundary";
        default: return "outside";
    }
}

// (sum_y w_y t_y, sum_y w_y s_y): the Bloch components of sum_y w_y pi_y.
inline std::pair<double, Vec3> weighted_effect_sum(const Povm& p,
                                                   std::span<const double> w) {
    if (w.size() != p.size()) throw DimensionMismatch("weight row length != outcome count");
    double a = 0.0;
    Vec3 b = {0, 0, 0};
    for (std::size_t y = 0; y < p.size(); ++y) {
        a += w[y] * p[y].t;
        b = add3(b, scale3(p[y].s, w[y]));
    }
    return {a, b};
}

// lambda_max(sum_y w_y pi_y), the optimal-state payoff of one witness row.
inline double row_threshold(const Povm& p, std::span<const double> w) {
    auto [a, b] = weighted_effect_sum(p, w);
    return lambda_max_qubit(a, b);
}

}  // namespace qrange

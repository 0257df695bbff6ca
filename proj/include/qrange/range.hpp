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

// The set of outcome distributions a qubit measurement can produce.
//
// Writing each effect as pi_y = t_y*I + s_y.sigma and collecting the rows s_y
// into the n x 3 matrix S, a state with Bloch vector r produces
// q = t + S r with ||r|| <= 1. The reachable set is therefore the ellipsoid
//
//     { q : (I - Q^+ Q)(q - t) = 0  and  (q - t)^T Q^+ (q - t) <= 1 },
//
// where Q = S S^T. Membership splits into an affine part (q - t must lie in
// the column space of Q) and a quadratic part (the pseudoinverse form is at
// most one). For points outside, the minimizing argument of each violated
// condition yields a separating witness in closed form.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qrange/povm.hpp"

namespace qrange {

//------------------------------------------------------------------------
// model
//------------------------------------------------------------------------

struct RangeModel {
    Povm povm;
    Vec t;                      // n
    Matrix S;                   // n x 3, rows are the Bloch parts s_y
    SymMatrix Q;                // S S^T
    SymMatrix Q_pinv;           // Moore-Penrose pseudoinverse of Q
    SymMatrix kernel_projector; // orthogonal projector onto ker(Q)
    std::size_t rank_Q = 0;     // <= 3
    EigenDecomposition eig;     // of Q, eigenvalues descending
};

// Precomputes everything membership queries need. Q is assembled directly
// from the Bloch rows (Q_ij = s_i . s_j), which keeps it symmetric bit for
// bit; rank_rel_tol is the relative eigenvalue cutoff separating the range
// directions from the kernel.
inline RangeModel build_range_model(const Povm& p, double rank_rel_tol = 1e-10) {
    const std::size_t n = p.size();
    Vec t(n);
    Matrix S(n, 3);
    for (std::size_t y = 0; y < n; ++y) {
        t[y] = p[y].t;
        S(y, 0) = p[y].s[0];
        S(y, 1) = p[y].s[1];
        S(y, 2) = p[y].s[2];
    }
    SymMatrix Q(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) Q.set(i, j, dot3(p[i].s, p[j].s));

    EigenDecomposition eig = eig_sym(Q);
    PseudoInverse pi = pinv_sym(Q, eig, rank_rel_tol);
    return RangeModel{p,       std::move(t),           std::move(S), std::move(Q),
                      pi.pinv, pi.kernel_projector, pi.rank,      std::move(eig)};
}

//------------------------------------------------------------------------
// membership
//------------------------------------------------------------------------

enum class MembershipStatus { Inside, Boundary, OutsideAffine, OutsideEllipsoid };

inline std::string_view to_string(MembershipStatus s) {
    switch (s) {
        case MembershipStatus::Inside: return "inside";
        case MembershipStatus::Boundary: return "boundary";
        case MembershipStatus::OutsideAffine: return "outside-affine";
        default: return "outside-ellipsoid";
    }
}

inline Containment to_containment(MembershipStatus s) {
    switch (s) {
        case MembershipStatus::Inside: return Containment::Inside;
        case MembershipStatus::Boundary: return Containment::Boundary;
        default: return Containment::Outside;
    }
}

struct Verdict {
    MembershipStatus status;
    double equality_residual;            // || (I - Q^+ Q)(q - t) ||
    double quad_form;                    // (q - t)^T Q^+ (q - t)
    std::optional<Vec> witness;          // attached iff status is Outside*
    std::optional<double> witness_gap;   // w.q - W(pi, w), positive iff separated
};

struct WitnessCertificate {
    Vec w;
    double gap;
};

namespace detail {

struct RangeQuery {
    Vec d;    // q - t
    Vec pd;   // kernel_projector * d
    Vec qd;   // Q_pinv * d
    double residual;
    double quad;
};

inline RangeQuery classify(const RangeModel& m, const Vec& q) {
    if (q.size() != m.t.size())
        throw DimensionMismatch("membership: distribution length != outcome count");
    RangeQuery c;
    c.d = sub(q, m.t);
    c.pd = matvec(m.kernel_projector, c.d);
    c.qd = matvec(m.Q_pinv, c.d);
    c.residual = norm2(c.pd);
    c.quad = dot(c.qd, c.d);
    return c;
}

// Separating witness for a point that violates the affine conditions:
// w = P(q - t) / ((q - t)^T P (q - t)) with P the kernel projector. Then
// S^T w = 0, so the threshold reduces to t.w and the gap is exactly one.
inline WitnessCertificate affine_witness(const RangeModel& m, const RangeQuery& c,
                                         const Vec& q) {
    const double denom = dot(c.pd, c.d);
    Vec w(c.pd.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = c.pd[i] / denom;
    return {w, dot(w, q) - row_threshold(m.povm, w)};
}

// Separating witness for a point beyond the ellipsoid:
// w = Q^+(q - t) / gamma with gamma = (q - t)^T Q^+ (q - t); the gap comes
// out as 1 - gamma^{-1/2}, positive exactly when gamma > 1.
inline WitnessCertificate ellipsoid_witness(const RangeModel& m, const RangeQuery& c,
                                            const Vec& q) {
    Vec w(c.qd.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = c.qd[i] / c.quad;
    return {w, dot(w, q) - row_threshold(m.povm, w)};
}

}  // namespace detail

// Exact membership test of q in the measurement's range. The affine check
// takes precedence over the quadratic one; Boundary means the quadratic form
// sits within tol of one. A separating witness and its gap are attached to
// every Outside verdict.
inline Verdict membership(const RangeModel& m, const Vec& q, double tol = 1e-9) {
    const detail::RangeQuery c = detail::classify(m, q);
    Verdict v{MembershipStatus::Inside, c.residual, c.quad, std::nullopt, std::nullopt};
    if (c.residual > tol) {
        v.status = MembershipStatus::OutsideAffine;
        auto cert = detail::affine_witness(m, c, q);
        v.witness = std::move(cert.w);
        v.witness_gap = cert.gap;
    } else if (std::abs(c.quad - 1.0) <= tol) {
        v.status = MembershipStatus::Boundary;
    } else if (c.quad > 1.0) {
        v.status = MembershipStatus::OutsideEllipsoid;
        auto cert = detail::ellipsoid_witness(m, c, q);
        v.witness = std::move(cert.w);
        v.witness_gap = cert.gap;
    }
    return v;
}

// Optimal separating witness for a strictly outside point. Throws NotOutside
// for Inside and Boundary points (a boundary point admits no separation).
inline WitnessCertificate optimal_witness(const RangeModel& m, const Vec& q,
                                          double tol = 1e-9) {
    const detail::RangeQuery c = detail::classify(m, q);
    if (c.residual > tol) return detail::affine_witness(m, c, q);
    if (std::abs(c.quad - 1.0) <= tol || c.quad < 1.0)
        throw NotOutside("point is inside or on the boundary of the range");
    return detail::ellipsoid_witness(m, c, q);
}

//------------------------------------------------------------------------
// geometry
//------------------------------------------------------------------------

enum class Degeneracy { Point, Segment, Ellipse, Ellipsoid };

inline std::string_view to_string(Degeneracy d) {
    switch (d) {
        case Degeneracy::Point: return "point";
        case Degeneracy::Segment: return "segment";
        case Degeneracy::Ellipse: return "ellipse";
        default: return "ellipsoid";
    }
}

struct SemiAxis {
    double length;  // sqrt of the corresponding eigenvalue of Q
    Vec direction;  // unit vector in distribution space
};

struct AffineConstraint {
    Vec normal;     // unit kernel vector of Q
    double offset;  // normal . t; feasible points satisfy normal . q = offset
};

struct EllipsoidGeometry {
    Vec center;  // t
    std::vector<SemiAxis> semi_axes;              // descending, one per positive eigenvalue
    Degeneracy degeneracy;                        // by rank: 0/1/2/3
    std::vector<AffineConstraint> affine_constraints;  // orthonormal kernel basis
};

inline EllipsoidGeometry geometry(const RangeModel& m) {
    const std::size_t n = m.t.size();
    EllipsoidGeometry g;
    g.center = m.t;
    switch (m.rank_Q) {
        case 0: g.degeneracy = Degeneracy::Point; break;
        case 1: g.degeneracy = Degeneracy::Segment; break;
        case 2: g.degeneracy = Degeneracy::Ellipse; break;
        default: g.degeneracy = Degeneracy::Ellipsoid; break;
    }
    for (std::size_t k = 0; k < n; ++k) {
        Vec col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = m.eig.eigenvectors(i, k);
        if (k < m.rank_Q) {
            g.semi_axes.push_back({std::sqrt(std::max(m.eig.eigenvalues[k], 0.0)), std::move(col)});
        } else {
            const double offset = dot(col, m.t);
            g.affine_constraints.push_back({std::move(col), offset});
        }
    }
    return g;
}

}  // namespace qrange

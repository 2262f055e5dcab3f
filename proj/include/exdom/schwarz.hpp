#pragma once

// Schwarz function data along parametrized boundary arcs. On the curve
// S(z(t)) = conj(z(t)), so S'(z(t)) = conj(z'(t)) / z'(t).

#include <cmath>

#include "exdom/domains.hpp"
#include "exdom/numerics.hpp"

namespace exdom {

struct SchwarzSample {
    double t = 0.0;
    cplx z, S_prime, tangent;
    double c_fit = 0.0;
};

namespace detail {

inline cplx checked_velocity(const BoundaryArc& arc, double t) {
    const cplx v = arc.velocity(t);
    if (!(std::abs(v) > 0.0) || !std::isfinite(std::abs(v))) {
        throw domain_error("degenerate parametrization: zero velocity on arc " + arc.name);
    }
    return v;
}

}  // namespace detail

inline cplx schwarz_derivative(const BoundaryArc& arc, double t) {
    const cplx v = detail::checked_velocity(arc, t);
    return std::conj(v) / v;
}

inline cplx unit_tangent(const BoundaryArc& arc, double t) {
    const cplx v = detail::checked_velocity(arc, t);
    return v / std::abs(v);
}

/// Gradient of the roof at a boundary point. Uses the domain's evaluator and
/// falls back to one-sided stencils along the inward normal if it fails.
inline Vec2 boundary_gradient(const RoofDomain& d, const BoundaryArc& arc, double t) {
    const cplx z = arc.position(t);
    if (d.roof_gradient) {
        try {
            const Vec2 g = d.roof_gradient(z);
            if (std::isfinite(g[0]) && std::isfinite(g[1])) return g;
        } catch (const error&) {
        }
    }
    if (!d.roof) throw usage_error("boundary_gradient: domain has no roof evaluator");
    const cplx T = unit_tangent(arc, t);
    const double h = 1e-4 * std::max(1.0, std::abs(z));
    cplx n = cplx(0.0, 1.0) * T;
    if (!d.contains(z + h * n)) n = -n;
    if (!d.contains(z + h * n)) throw out_of_domain_error("boundary_gradient: no inward direction found");
    return one_sided_gradient(d.roof, z, n, h);
}

struct UzSchwarzResult {
    double residual = 0.0;
    double c_fit = 0.0;
};

/// u_z = (u_x - i u_y)/2 against c sqrt(-S') with c = 1/2; the residual is the
/// smaller of the two branches.
inline UzSchwarzResult uz_schwarz_residual(const RoofDomain& d, const BoundaryArc& arc, double t) {
    if (d.ambient_dim != 2) throw usage_error("uz_schwarz_residual: planar domains only");
    const Vec2 g = boundary_gradient(d, arc, t);
    const cplx uz = 0.5 * cplx(g[0], -g[1]);
    const cplx root = std::sqrt(-schwarz_derivative(arc, t));
    UzSchwarzResult r;
    r.residual = std::min(std::abs(uz - 0.5 * root), std::abs(uz + 0.5 * root));
    r.c_fit = std::abs(uz) / std::abs(root);
    return r;
}

inline SchwarzSample schwarz_sample(const RoofDomain& d, const BoundaryArc& arc, double t) {
    SchwarzSample s;
    s.t = t;
    s.z = arc.position(t);
    s.S_prime = schwarz_derivative(arc, t);
    s.tangent = unit_tangent(arc, t);
    s.c_fit = uz_schwarz_residual(d, arc, t).c_fit;
    return s;
}

}  // namespace exdom

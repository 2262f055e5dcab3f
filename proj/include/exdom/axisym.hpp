#pragma once

// Axially symmetric potentials in meridian coordinates (x along the axis,
// y > 0 the distance to it). In R^n the reduced equation is
// u_xx + u_yy + (n-2) u_y / y = 0; for n = 4 this is Delta(y u) = 0.

#include <cmath>
#include <optional>

#include "exdom/domains.hpp"
#include "exdom/numerics.hpp"
#include "exdom/schwarz.hpp"

namespace exdom {

/// Default step for meridian checks. The operators are evaluated at h and
/// h/2 and Richardson-extrapolated, so h can stay large enough that the
/// 1/h^2 roundoff amplification is near 1e-10.
inline double meridian_fd_step(cplx p) { return 1e-3 * std::max(1.0, std::abs(p)); }

/// A meridian-plane test field on {y > 0} (used for calibration cases).
inline RoofDomain meridian_field(std::string name, std::function<double(cplx)> u) {
    RoofDomain d;
    d.name = std::move(name);
    d.ambient_dim = 4;
    d.contains = [](cplx p) { return p.imag() > 0.0; };
    d.roof = std::move(u);
    d.gradient_closed_form = false;
    return d;
}

namespace detail {

inline void check_meridian_stencil(cplx p, double h) {
    if (!(h > 0.0)) throw usage_error("meridian: step must be positive");
    if (!(p.imag() - 2.0 * h > 0.0)) throw out_of_domain_error("meridian: stencil crosses the axis");
}

template <class Op>
double richardson(Op&& op, double h) {
    const double a = op(h), b = op(0.5 * h);
    return (4.0 * b - a) / 3.0;
}

}  // namespace detail

/// |Delta u + (n-2) u_y / y| at p; n defaults to the domain's ambient dimension.
inline double meridian_residual(const RoofDomain& d, cplx p, double h = 0.0, int n = 0) {
    if (h == 0.0) h = meridian_fd_step(p);
    if (n == 0) n = d.ambient_dim;
    detail::check_meridian_stencil(p, h);
    const double y = p.imag();
    auto op = [&](double hh) {
        const FdResult r = fd_operators(d.roof, p, hh, d.contains);
        return r.laplacian + (n - 2) * r.gradient[1] / y;
    };
    return std::abs(detail::richardson(op, h));
}

/// |Delta (y u)| at p.
inline double lift_harmonic_residual(const RoofDomain& d, cplx p, double h = 0.0) {
    if (h == 0.0) h = meridian_fd_step(p);
    detail::check_meridian_stencil(p, h);
    auto yu = [&](cplx q) { return q.imag() * d.roof(q); };
    auto op = [&](double hh) { return fd_operators(yu, p, hh, d.contains).laplacian; };
    return std::abs(detail::richardson(op, h));
}

/// W = (y u)_z = -(i/2) u + y (u_x - i u_y)/2 with the closed-form gradient.
inline cplx w_field(const RoofDomain& d, cplx p) {
    if (!d.roof_gradient) throw usage_error("w_field: domain has no gradient evaluator");
    const Vec2 g = d.roof_gradient(p);
    return cplx(0.0, -0.5) * d.roof(p) + p.imag() * 0.5 * cplx(g[0], -g[1]);
}

/// W with a central-difference gradient (Richardson-extrapolated).
inline cplx w_field_fd(const RoofDomain& d, cplx p, double h = 0.0) {
    if (h == 0.0) h = meridian_fd_step(p);
    detail::check_meridian_stencil(p, h);
    auto gx = [&](double hh) { return fd_operators(d.roof, p, hh, d.contains).gradient[0]; };
    auto gy = [&](double hh) { return fd_operators(d.roof, p, hh, d.contains).gradient[1]; };
    const double ux = detail::richardson(gx, h), uy = detail::richardson(gy, h);
    return cplx(0.0, -0.5) * d.roof(p) + p.imag() * 0.5 * cplx(ux, -uy);
}

/// |dW/dzbar| = |W_x + i W_y| / 2 by central differences of the closed-form W.
inline double w_cauchy_riemann_residual(const RoofDomain& d, cplx p, double h = 0.0) {
    if (h == 0.0) h = 1e-4 * std::max(1.0, std::abs(p));
    detail::check_meridian_stencil(p, h);
    const cplx Wx = (w_field(d, p + h) - w_field(d, p - h)) / (2.0 * h);
    const cplx Wy = (w_field(d, p + cplx(0.0, h)) - w_field(d, p - cplx(0.0, h))) / (2.0 * h);
    return 0.5 * std::abs(Wx + cplx(0.0, 1.0) * Wy);
}

struct WIdentityResult {
    double residual = 0.0;
    double c_fit = 0.0;  // |W| / |((z - S)/2i) sqrt(-S')|
    double c_used = 0.0;
};

/// min over branches of |W(z) - c ((z - conj z)/2i) sqrt(-S')| on a boundary
/// arc. The default c is neumann_constant / 2; pass c to calibrate.
inline WIdentityResult w_identity_residual(const RoofDomain& d, const BoundaryArc& arc, double t,
                                           std::optional<double> c = std::nullopt) {
    const cplx z = arc.position(t);
    if (!(z.imag() > 0.0)) throw out_of_domain_error("w_identity_residual: point on the axis");
    const Vec2 g = boundary_gradient(d, arc, t);
    const cplx W = cplx(0.0, -0.5) * d.roof(z) + z.imag() * 0.5 * cplx(g[0], -g[1]);
    const cplx base = (z - std::conj(z)) / cplx(0.0, 2.0) * std::sqrt(-schwarz_derivative(arc, t));
    WIdentityResult r;
    r.c_used = c.value_or(0.5 * d.neumann_constant);
    r.residual = std::min(std::abs(W - r.c_used * base), std::abs(W + r.c_used * base));
    r.c_fit = std::abs(W) / std::abs(base);
    return r;
}

}  // namespace exdom

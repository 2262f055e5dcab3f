#pragma once

// Catalog of exceptional domains: roof function, gradient, boundary arcs and
// conformal charts. Planar points and meridian points (x = axis coordinate,
// y = distance to the axis) are both carried as cplx x + iy.

#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "exdom/numerics.hpp"
#include "exdom/types.hpp"

namespace exdom {

struct BoundaryArc {
    std::string name;
    Interval param_range;
    bool unbounded = false;  // integrals and samples are clipped to |t| <= T
    std::function<cplx(double)> position;
    std::function<cplx(double)> velocity;
};

enum class ChartReference { unit_disk, strip_halfwidth_pi_over_2, elliptic_fundamental };

inline const char* to_string(ChartReference r) {
    switch (r) {
        case ChartReference::unit_disk: return "unit_disk";
        case ChartReference::strip_halfwidth_pi_over_2: return "strip_halfwidth_pi_over_2";
        case ChartReference::elliptic_fundamental: return "elliptic_fundamental";
    }
    return "?";
}

/// Conformal map h from a reference domain onto Omega together with the
/// pulled-back analytic completion f o h. `f_of_h_deriv` is d(f o h)/d(zeta),
/// so f'(h(zeta)) = f_of_h_deriv / h_deriv.
struct ConformalChart {
    ChartReference reference = ChartReference::unit_disk;
    double k = 0.0;  // modulus, elliptic_fundamental only
    std::function<cplx(cplx)> h;
    std::function<cplx(cplx)> h_deriv;
    std::function<cplx(cplx)> f_of_h;
    std::function<cplx(cplx)> f_of_h_deriv;
    std::function<bool(cplx)> in_reference;
    /// Deterministic interior samples of the reference domain (about n of them).
    std::function<std::vector<cplx>(std::size_t)> interior_samples;
};

struct RoofDomain {
    std::string name;
    int ambient_dim = 2;
    std::map<std::string, double> params;
    std::function<bool(cplx)> contains;
    std::function<double(cplx)> roof;
    std::function<Vec2(cplx)> roof_gradient;
    bool gradient_closed_form = true;
    std::function<cplx(cplx)> analytic_deriv;  // f'(z); empty if not provided
    std::vector<BoundaryArc> boundary;
    std::optional<ConformalChart> chart;
    std::optional<ConformalChart> disk_chart;
    double neumann_constant = 1.0;
    std::function<double(cplx)> boundary_distance;
    double growth_constant = 0.0;  // C in u(a) <= 2 (|a| + C)
    Box sample_box;
    int ode_sign = 0;  // sigma in (f')^2 = sigma (f-1)/(f+1); 0 if no ODE applies
    std::string notes;
};

namespace detail {

/// Gradient (u_x, u_y) = (Re f', -Im f').
inline Vec2 gradient_from_fprime(cplx fp) { return {fp.real(), -fp.imag()}; }

inline std::vector<cplx> disk_samples(std::size_t n, double rmax) {
    const std::size_t nr = std::max<std::size_t>(2, static_cast<std::size_t>(std::sqrt(static_cast<double>(n) / 4.0)));
    const std::size_t na = std::max<std::size_t>(4, n / nr);
    std::vector<cplx> out;
    out.reserve(nr * na + 1);
    out.push_back(0.0);
    for (std::size_t i = 1; i <= nr; ++i) {
        const double r = rmax * static_cast<double>(i) / static_cast<double>(nr);
        for (std::size_t j = 0; j < na; ++j) {
            out.push_back(std::polar(r, 2.0 * pi * (static_cast<double>(j) + 0.5) / static_cast<double>(na)));
        }
    }
    return out;
}

inline std::vector<cplx> rect_samples(std::size_t n, double xmax, double ymax) {
    const std::size_t ny = std::max<std::size_t>(2, static_cast<std::size_t>(std::sqrt(static_cast<double>(n) / 4.0)));
    const std::size_t nx = std::max<std::size_t>(2, n / ny);
    std::vector<cplx> out;
    out.reserve(nx * ny);
    for (std::size_t j = 0; j < ny; ++j) {
        const double y = -ymax + 2.0 * ymax * (static_cast<double>(j) + 0.5) / static_cast<double>(ny);
        for (std::size_t i = 0; i < nx; ++i) {
            const double x = -xmax + 2.0 * xmax * (static_cast<double>(i) + 0.5) / static_cast<double>(nx);
            out.emplace_back(x, y);
        }
    }
    return out;
}

/// Distance from a point to a set of arcs: nearest of a dense sample, then a
/// golden-section refinement of |position(t) - a| around it.
class ArcDistance {
public:
    ArcDistance(std::vector<BoundaryArc> arcs, double T, std::size_t n = 4000) : arcs_(std::move(arcs)) {
        for (std::size_t a = 0; a < arcs_.size(); ++a) {
            const auto& arc = arcs_[a];
            const double lo = arc.unbounded ? std::max(arc.param_range.lo, -T) : arc.param_range.lo;
            const double hi = arc.unbounded ? std::min(arc.param_range.hi, T) : arc.param_range.hi;
            for (std::size_t j = 0; j <= n; ++j) {
                const double t = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n);
                samples_.push_back({a, t, arc.position(t)});
            }
            spacing_.push_back((hi - lo) / static_cast<double>(n));
            bounds_.push_back({lo, hi});
        }
    }

    double operator()(cplx p) const {
        std::size_t best = 0;
        double bd = inf;
        for (std::size_t i = 0; i < samples_.size(); ++i) {
            const double d = std::abs(samples_[i].z - p);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        const auto& s = samples_[best];
        const auto& arc = arcs_[s.arc];
        double lo = std::max(bounds_[s.arc].first, s.t - spacing_[s.arc]);
        double hi = std::min(bounds_[s.arc].second, s.t + spacing_[s.arc]);
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        auto dist = [&](double t) { return std::abs(arc.position(t) - p); };
        double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
        double fc = dist(c), fd = dist(d);
        for (int it = 0; it < 60; ++it) {
            if (fc < fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - g * (hi - lo);
                fc = dist(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + g * (hi - lo);
                fd = dist(d);
            }
        }
        return std::min(bd, std::min(fc, fd));
    }

private:
    struct Sample {
        std::size_t arc;
        double t;
        cplx z;
    };
    std::vector<BoundaryArc> arcs_;
    std::vector<Sample> samples_;
    std::vector<double> spacing_;
    std::vector<std::pair<double, double>> bounds_;
};

}  // namespace detail

// ---------------------------------------------------------------------------

/// Omega = {Re z > 0}, u = Re z, f(z) = z.
inline RoofDomain halfplane() {
    RoofDomain d;
    d.name = "halfplane";
    d.contains = [](cplx z) { return z.real() > 0.0; };
    d.roof = [](cplx z) { return z.real(); };
    d.roof_gradient = [](cplx) { return Vec2{1.0, 0.0}; };
    d.analytic_deriv = [](cplx) { return cplx(1.0); };
    BoundaryArc arc;
    arc.name = "imaginary_axis";
    arc.param_range = Interval(-inf, inf);
    arc.unbounded = true;
    arc.position = [](double t) { return cplx(0.0, t); };
    arc.velocity = [](double) { return cplx(0.0, 1.0); };
    d.boundary = {arc};

    ConformalChart c;
    c.reference = ChartReference::unit_disk;
    c.h = [](cplx s) { return (1.0 + s) / (1.0 - s); };
    c.h_deriv = [](cplx s) { return 2.0 / ((1.0 - s) * (1.0 - s)); };
    c.f_of_h = c.h;
    c.f_of_h_deriv = c.h_deriv;
    c.in_reference = [](cplx s) { return std::abs(s) < 1.0; };
    c.interior_samples = [](std::size_t n) { return detail::disk_samples(n, 0.9); };
    d.chart = c;
    d.disk_chart = c;
    d.boundary_distance = [](cplx z) { return z.real(); };
    d.growth_constant = 0.0;
    d.sample_box = {0.0, 5.0, -5.0, 5.0};
    return d;
}

/// Omega = {|z| > R}, u = R log(|z|/R), f'(z) = R/z.
inline RoofDomain exterior_disk(double R) {
    if (!(R > 0.0)) throw usage_error("exterior_disk: R must be positive");
    RoofDomain d;
    d.name = "exterior_disk";
    d.params["R"] = R;
    d.contains = [R](cplx z) { return std::abs(z) > R; };
    d.roof = [R](cplx z) { return R * std::log(std::abs(z) / R); };
    d.roof_gradient = [R](cplx z) { return detail::gradient_from_fprime(R / z); };
    d.analytic_deriv = [R](cplx z) { return R / z; };
    BoundaryArc arc;
    arc.name = "circle";
    arc.param_range = Interval(0.0, 2.0 * pi);
    arc.position = [R](double t) { return std::polar(R, t); };
    arc.velocity = [R](double t) { return cplx(0.0, 1.0) * std::polar(R, t); };
    d.boundary = {arc};
    d.boundary_distance = [R](cplx z) { return std::abs(z) - R; };
    d.growth_constant = 0.0;
    d.sample_box = {-3.0 * R, 3.0 * R, -3.0 * R, 3.0 * R};
    return d;
}

namespace detail {

/// Inverse of z = w + sinh w on the closed strip |Im w| <= pi/2.
inline cplx strip_cosh_preimage(cplx z) {
    auto map = [](cplx w) { return std::pair<cplx, cplx>{w + std::sinh(w), 1.0 + std::cosh(w)}; };
    const double tol = 1e-15 * std::max(1.0, std::abs(z));
    auto in_strip = [](cplx w) { return std::abs(w.imag()) <= 0.5 * pi + 1e-9; };
    NewtonResult r = newton_invert(map, z, std::asinh(z), tol);
    if (r.converged && in_strip(r.root)) return r.root;
    // continuation along the ray from 0, where w = 0 is the preimage
    cplx w = 0.0;
    const int steps = 64;
    for (int j = 1; j <= steps; ++j) {
        const cplx zj = z * (static_cast<double>(j) / steps);
        r = newton_invert(map, zj, w, 1e-15 * std::max(1.0, std::abs(zj)));
        if (!r.converged && r.residual > 1e-12 * std::max(1.0, std::abs(zj))) {
            throw convergence_error("strip_cosh: inversion of w + sinh w failed", r.residual);
        }
        w = r.root;
    }
    if (!in_strip(w)) throw convergence_error("strip_cosh: preimage left the strip", std::abs(w.imag()));
    return w;
}

}  // namespace detail

/// Image of the strip |Im w| < pi/2 under z = w + sinh w, f(z(w)) = cosh w.
inline RoofDomain strip_cosh() {
    RoofDomain d;
    d.name = "strip_cosh";
    d.contains = [](cplx z) { return std::abs(z.imag()) < 0.5 * pi + std::cosh(z.real()); };
    d.roof = [](cplx z) { return std::cosh(detail::strip_cosh_preimage(z)).real(); };
    d.analytic_deriv = [](cplx z) { return std::tanh(0.5 * detail::strip_cosh_preimage(z)); };
    d.roof_gradient = [](cplx z) {
        return detail::gradient_from_fprime(std::tanh(0.5 * detail::strip_cosh_preimage(z)));
    };
    for (int s : {1, -1}) {
        BoundaryArc arc;
        arc.name = s > 0 ? "upper" : "lower";
        arc.param_range = Interval(-inf, inf);
        arc.unbounded = true;
        const double sd = s;
        arc.position = [sd](double t) { return cplx(t, sd * (0.5 * pi + std::cosh(t))); };
        arc.velocity = [sd](double t) { return cplx(1.0, sd * std::sinh(t)); };
        d.boundary.push_back(arc);
    }

    ConformalChart strip;
    strip.reference = ChartReference::strip_halfwidth_pi_over_2;
    strip.h = [](cplx w) { return w + std::sinh(w); };
    strip.h_deriv = [](cplx w) { return 1.0 + std::cosh(w); };
    strip.f_of_h = [](cplx w) { return std::cosh(w); };
    strip.f_of_h_deriv = [](cplx w) { return std::sinh(w); };
    strip.in_reference = [](cplx w) { return std::abs(w.imag()) < 0.5 * pi; };
    strip.interior_samples = [](std::size_t n) { return detail::rect_samples(n, 4.0, 0.5 * pi * 0.98); };
    d.chart = strip;

    // zeta -> w = log((1+zeta)/(1-zeta)) maps the disk onto the strip.
    ConformalChart disk;
    disk.reference = ChartReference::unit_disk;
    auto w_of = [](cplx s) { return std::log((1.0 + s) / (1.0 - s)); };
    disk.h = [w_of](cplx s) {
        const cplx w = w_of(s);
        return w + std::sinh(w);
    };
    disk.h_deriv = [w_of](cplx s) { return (1.0 + std::cosh(w_of(s))) * 2.0 / (1.0 - s * s); };
    disk.f_of_h = [w_of](cplx s) { return std::cosh(w_of(s)); };
    disk.f_of_h_deriv = [w_of](cplx s) { return std::sinh(w_of(s)) * 2.0 / (1.0 - s * s); };
    disk.in_reference = [](cplx s) { return std::abs(s) < 1.0; };
    disk.interior_samples = [](std::size_t n) { return detail::disk_samples(n, 0.9); };
    d.disk_chart = disk;

    auto dist = std::make_shared<detail::ArcDistance>(d.boundary, 4.0);
    d.boundary_distance = [dist](cplx z) { return (*dist)(z); };
    d.growth_constant = 1.0;
    d.sample_box = {-5.0, 5.0, -6.0, 6.0};
    d.ode_sign = 1;
    d.params["z0"] = 0.0;
    d.notes = "z0 = 0 is the unique zero of f' and f(z0) = 1";
    return d;
}

/// Normalized cone example in R^4, meridian coordinates: y > |x|,
/// u = (y^2 - x^2) / (2 sqrt 2 y).
inline RoofDomain cone4d() {
    const double s = 1.0 / (2.0 * std::sqrt(2.0));
    RoofDomain d;
    d.name = "cone4d";
    d.ambient_dim = 4;
    d.params["normalization"] = s;
    d.contains = [](cplx p) { return p.imag() > std::abs(p.real()); };
    d.roof = [s](cplx p) {
        if (!(p.imag() > 0.0)) throw domain_error("cone4d: meridian point needs y > 0");
        return s * (p.imag() * p.imag() - p.real() * p.real()) / p.imag();
    };
    d.roof_gradient = [s](cplx p) {
        if (!(p.imag() > 0.0)) throw domain_error("cone4d: meridian point needs y > 0");
        const double x = p.real(), y = p.imag();
        return Vec2{-2.0 * s * x / y, s * (y * y + x * x) / (y * y)};
    };
    for (int sg : {1, -1}) {
        BoundaryArc arc;
        arc.name = sg > 0 ? "ray_y_eq_x" : "ray_y_eq_minus_x";
        arc.param_range = Interval(0.0, inf);
        arc.unbounded = true;
        const cplx dir(sg, 1.0);
        arc.position = [dir](double t) { return t * dir; };
        arc.velocity = [dir](double) { return dir; };
        d.boundary.push_back(arc);
    }
    d.boundary_distance = [](cplx p) { return (p.imag() - std::abs(p.real())) / std::sqrt(2.0); };
    d.growth_constant = 0.0;
    d.sample_box = {-5.0, 5.0, 0.0, 5.0};
    d.neumann_constant = 1.0;
    d.notes = "roof is (y^2-x^2)/y scaled by 1/(2 sqrt 2), which has |grad u| = 2 sqrt 2 on the rays";
    return d;
}

/// Exterior of the ball of radius R in R^n, n in {3, 4}, meridian coordinates:
/// u(r) = R/(n-2) (1 - (R/r)^(n-2)).
inline RoofDomain exterior_ball(int n, double R) {
    if (n != 3 && n != 4) throw usage_error("exterior_ball: dimension must be 3 or 4");
    if (!(R > 0.0)) throw usage_error("exterior_ball: R must be positive");
    RoofDomain d;
    d.name = "exterior_ball";
    d.ambient_dim = n;
    d.params["n"] = n;
    d.params["R"] = R;
    const double m = n - 2;
    d.contains = [R](cplx p) { return p.imag() > 0.0 && std::abs(p) > R; };
    d.roof = [R, m](cplx p) {
        const double r = std::abs(p);
        if (r < R * (1.0 - 1e-12)) throw domain_error("exterior_ball: point inside the ball");
        return R / m * (1.0 - std::pow(R / r, m));
    };
    d.roof_gradient = [R, m](cplx p) {
        const double r = std::abs(p);
        if (r < R * (1.0 - 1e-12)) throw domain_error("exterior_ball: point inside the ball");
        const double du = std::pow(R / r, m + 1.0);
        return Vec2{du * p.real() / r, du * p.imag() / r};
    };
    BoundaryArc arc;
    arc.name = "meridian_semicircle";
    arc.param_range = Interval(0.0, pi);
    arc.position = [R](double t) { return std::polar(R, t); };
    arc.velocity = [R](double t) { return cplx(0.0, 1.0) * std::polar(R, t); };
    d.boundary = {arc};
    d.boundary_distance = [R](cplx p) { return std::abs(p) - R; };
    d.growth_constant = R;
    d.sample_box = {-3.0 * R, 3.0 * R, 0.0, 3.0 * R};
    d.notes = "roof tends to R/(n-2) at infinity";
    return d;
}

// ---------------------------------------------------------------------------

/// Equi-parameter midpoint samples of an arc, clipped to |t| <= T when the
/// arc is unbounded.
inline std::vector<double> arc_parameters(const BoundaryArc& arc, std::size_t n, double T) {
    double lo = arc.param_range.lo, hi = arc.param_range.hi;
    if (arc.unbounded) {
        lo = std::max(lo, -T);
        hi = std::min(hi, T);
    }
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = lo + (hi - lo) * (static_cast<double>(j) + 0.5) / static_cast<double>(n);
    }
    return out;
}

/// CSV export of all arcs: header `t,x,y`, 17 significant digits.
inline void write_boundary_csv(std::ostream& os, const RoofDomain& d, std::size_t n, double T) {
    std::ostringstream buf;
    buf << std::setprecision(17);
    buf << "t,x,y\n";
    for (const auto& arc : d.boundary) {
        for (double t : arc_parameters(arc, n, T)) {
            const cplx z = arc.position(t);
            buf << t << ',' << z.real() << ',' << z.imag() << '\n';
        }
    }
    os << buf.str();
}

}  // namespace exdom

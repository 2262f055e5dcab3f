#pragma once

// Numerical kernels shared by every check: adaptive and periodic quadrature,
// Cauchy-integral derivatives, finite-difference operators, complex Newton
// inversion and product rules on spheres in R^3 and R^4.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "exdom/types.hpp"

namespace exdom {

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature
// ---------------------------------------------------------------------------

struct QuadratureResult {
    cplx value{0.0, 0.0};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    cplx value;
    double error;
    double roundoff;  // 50 eps * int |f|, below which bisection cannot help
    int depth;
};

template <class F>
Segment gk15(F& f, double a, double b, int depth) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double dhlgth = std::abs(hlgth);

    std::array<cplx, 7> fv1{}, fv2{};
    const cplx fc = f(centr);
    cplx resg = fc * kWg[3];
    cplx resk = fc * kWgk[7];
    double resabs = std::abs(resk);

    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = hlgth * kXgk[jtw];
        const cplx f1 = f(centr - absc);
        const cplx f2 = f(centr + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[jtw] * (f1 + f2);
        resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = hlgth * kXgk[jtwm1];
        const cplx f1 = f(centr - absc);
        const cplx f2 = f(centr + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += kWgk[jtwm1] * (f1 + f2);
        resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }

    const cplx reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }

    const cplx result = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    double abserr = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0) {
        abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double roundoff = 50.0 * eps * resabs;
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        abserr = std::max(roundoff, abserr);
    }
    return {a, b, result, abserr, roundoff, depth};
}

}  // namespace detail

inline constexpr int kQuadMaxDepth = 40;
inline constexpr std::size_t kQuadMaxSegments = 4000;

/// Globally adaptive G7/K15 quadrature of a complex-valued integrand.
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below `tol` (absolute) or reaches the roundoff floor of the
/// rule. Hitting the depth cap or the segment budget first returns
/// `converged == false` together with the best value found.
template <class F>
QuadratureResult integrate_adaptive(F&& f, const Interval& iv, double tol) {
    if (!(tol > 0.0)) throw usage_error("integrate_adaptive: tol must be positive");

    auto fc = [&f](double t) -> cplx { return cplx(f(t)); };
    std::vector<detail::Segment> segs;
    segs.push_back(detail::gk15(fc, iv.lo, iv.hi, 0));
    std::size_t evals = 15;

    QuadratureResult out;
    while (true) {
        cplx total{0.0, 0.0};
        double err = 0.0;
        double floor = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            err += segs[i].error;
            floor += segs[i].roundoff;
            if (segs[i].error > segs[worst].error) worst = i;
        }
        out.value = total;
        out.error_estimate = err;
        out.evaluations = evals;
        if (!std::isfinite(err) || !std::isfinite(total.real()) ||
            !std::isfinite(total.imag())) {
            out.converged = false;
            return out;
        }
        if (err <= tol || err <= 2.0 * floor) return out;
        const detail::Segment s = segs[worst];
        if (s.depth >= kQuadMaxDepth || segs.size() >= kQuadMaxSegments) {
            out.converged = false;
            return out;
        }
        const double mid = 0.5 * (s.a + s.b);
        segs[worst] = detail::gk15(fc, s.a, mid, s.depth + 1);
        segs.push_back(detail::gk15(fc, mid, s.b, s.depth + 1));
        evals += 30;
    }
}

// ---------------------------------------------------------------------------
// Periodic trapezoid rule
// ---------------------------------------------------------------------------

/// n-point trapezoid rule over one period starting at 0. Spectrally accurate
/// for analytic periodic integrands.
template <class F>
cplx integrate_periodic(F&& f, double period, std::size_t n) {
    if (n < 4) throw usage_error("integrate_periodic: need at least 4 nodes");
    if (!(period > 0.0)) throw usage_error("integrate_periodic: period must be positive");
    const double h = period / static_cast<double>(n);
    cplx sum{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) sum += cplx(f(h * static_cast<double>(j)));
    return sum * h;
}

// ---------------------------------------------------------------------------
// Derivatives of analytic functions via the Cauchy integral formula
// ---------------------------------------------------------------------------

/// Returns {f', f'', f'''} truncated to `order` entries.
///
/// f^(k)(z) = k!/(2 pi r^k) * int_0^{2pi} f(z + r e^{it}) e^{-ikt} dt, with an
/// n-point trapezoid rule. Accuracy is limited by (r/d)^n where d is the
/// distance from z to the nearest singularity, and by roundoff ~ eps/r^k.
template <class F>
std::vector<cplx> cauchy_derivatives(F&& f, cplx z, double radius, int order,
                                     std::size_t n = 64) {
    if (!(radius > 0.0)) throw usage_error("cauchy_derivatives: radius must be positive");
    if (order < 1 || order > 3) throw usage_error("cauchy_derivatives: order must be 1..3");
    if (n < 4) throw usage_error("cauchy_derivatives: need at least 4 nodes");

    std::vector<cplx> acc(static_cast<std::size_t>(order), cplx{0.0, 0.0});
    const double h = 2.0 * pi / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = h * static_cast<double>(j);
        const cplx e = std::polar(1.0, t);
        const cplx fv = cplx(f(z + radius * e));
        cplx ek = 1.0;
        for (int k = 0; k < order; ++k) {
            ek /= e;
            acc[static_cast<std::size_t>(k)] += fv * ek;
        }
    }
    double fact = 1.0;
    double rk = 1.0;
    for (int k = 0; k < order; ++k) {
        fact *= static_cast<double>(k + 1);
        rk *= radius;
        acc[static_cast<std::size_t>(k)] *= fact / (static_cast<double>(n) * rk);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Finite-difference operators on a 3x3 stencil
// ---------------------------------------------------------------------------

struct FdResult {
    Vec2 gradient{0.0, 0.0};
    double laplacian = 0.0;
};

/// Default step 1e-4 * max(1, |p|).
inline double default_fd_step(cplx p) { return 1e-4 * std::max(1.0, std::abs(p)); }

/// Central-difference gradient and the 9-point (Mehrstellen) Laplacian.
///
/// The Laplacian is O(h^2) in general and O(h^4) on harmonic fields. If
/// `inside` is given, every stencil point must satisfy it.
template <class U>
FdResult fd_operators(U&& u, cplx p, double h,
                      const std::function<bool(cplx)>& inside = {}) {
    if (!(h > 0.0)) throw usage_error("fd_operators: step must be positive");
    std::array<double, 9> v{};
    int idx = 0;
    for (int j = -1; j <= 1; ++j) {
        for (int i = -1; i <= 1; ++i) {
            const cplx q = p + cplx(i * h, j * h);
            if (inside && !inside(q)) {
                throw out_of_domain_error("fd_operators: stencil leaves the domain");
            }
            const double val = u(q);
            if (!std::isfinite(val)) {
                throw out_of_domain_error("fd_operators: field not finite on stencil");
            }
            v[static_cast<std::size_t>(idx++)] = val;
        }
    }
    // v[(j+1)*3 + (i+1)]
    const double sw = v[0], s = v[1], se = v[2];
    const double w = v[3], c = v[4], e = v[5];
    const double nw = v[6], n = v[7], ne = v[8];
    FdResult r;
    r.gradient = {(e - w) / (2.0 * h), (n - s) / (2.0 * h)};
    r.laplacian = (4.0 * (e + w + n + s) + (ne + nw + se + sw) - 20.0 * c) / (6.0 * h * h);
    return r;
}

/// One-sided derivative of u at p along unit direction d with a 4-point
/// third-order stencil: (-11 u0 + 18 u1 - 9 u2 + 2 u3) / (6h).
template <class U>
double one_sided_derivative(U&& u, cplx p, cplx d, double h) {
    const double u0 = u(p), u1 = u(p + h * d), u2 = u(p + 2.0 * h * d), u3 = u(p + 3.0 * h * d);
    return (-11.0 * u0 + 18.0 * u1 - 9.0 * u2 + 2.0 * u3) / (6.0 * h);
}

/// Gradient at a boundary point from one-sided stencils pointing into the
/// domain along two directions at +-30 degrees from the inward normal.
template <class U>
Vec2 one_sided_gradient(U&& u, cplx p, cplx inward_normal, double h) {
    const cplx n = inward_normal / std::abs(inward_normal);
    const cplx d1 = n * std::polar(1.0, pi / 6.0);
    const cplx d2 = n * std::polar(1.0, -pi / 6.0);
    const double g1 = one_sided_derivative(u, p, d1, h);
    const double g2 = one_sided_derivative(u, p, d2, h);
    // [d1x d1y; d2x d2y] * [gx; gy] = [g1; g2]
    const double det = d1.real() * d2.imag() - d1.imag() * d2.real();
    return {(g1 * d2.imag() - g2 * d1.imag()) / det, (d1.real() * g2 - d2.real() * g1) / det};
}

// ---------------------------------------------------------------------------
// Damped complex Newton iteration
// ---------------------------------------------------------------------------

struct NewtonResult {
    cplx root{0.0, 0.0};
    double residual = inf;
    int iterations = 0;
    bool converged = false;
};

/// Solves map(w) = target. `map` returns {value, derivative}. Steps are
/// halved while the residual does not decrease; on failure the best iterate
/// and its residual are returned with `converged == false`.
template <class Map>
NewtonResult newton_invert(Map&& map, cplx target, cplx guess, double tol, int maxit = 60) {
    NewtonResult best;
    cplx w = guess;
    auto [val, der] = map(w);
    double res = std::abs(val - target);
    best.root = w;
    best.residual = res;
    for (int it = 1; it <= maxit; ++it) {
        best.iterations = it;
        if (res <= tol) {
            best.converged = true;
            return best;
        }
        if (der == cplx(0.0, 0.0) || !std::isfinite(std::abs(der))) break;
        const cplx step = (val - target) / der;
        double lambda = 1.0;
        bool improved = false;
        for (int half = 0; half < 30; ++half) {
            const cplx wn = w - lambda * step;
            auto [vn, dn] = map(wn);
            const double rn = std::abs(vn - target);
            if (std::isfinite(rn) && rn < res) {
                w = wn;
                val = vn;
                der = dn;
                res = rn;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (res < best.residual) {
            best.root = w;
            best.residual = res;
        }
        if (!improved) break;
    }
    best.converged = best.residual <= tol;
    return best;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes and sphere quadrature
// ---------------------------------------------------------------------------

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton on P_n, Tricomi initial guesses).
inline GaussRule gauss_legendre(std::size_t n) {
    if (n == 0) throw usage_error("gauss_legendre: n must be positive");
    GaussRule g;
    if (n == 1) return {{0.0}, {2.0}};
    g.nodes.resize(n);
    g.weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            dp = nd * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at converged node
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double kd = static_cast<double>(k);
            const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
            p0 = p1;
            p1 = p2;
        }
        dp = nd * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.nodes[i] = -x;
        g.nodes[n - 1 - i] = x;
        g.weights[i] = w;
        g.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) g.nodes[n / 2] = 0.0;
    return g;
}

/// Surface integral of g over the sphere of radius R in R^n, n in {3, 4}.
///
/// n = 3: Gauss-Legendre in cos(polar) x trapezoid in azimuth.
/// n = 4: Gauss-Chebyshev (second kind) in cos(first hyperspherical angle),
/// Gauss-Legendre in cos(second angle), trapezoid in azimuth.
/// `order` Gauss nodes per Gauss direction and 2*order azimuthal nodes.
template <class G>
double sphere_quadrature(G&& g, int n, double R, std::size_t order) {
    if (n != 3 && n != 4) throw usage_error("sphere_quadrature: dimension must be 3 or 4");
    if (!(R > 0.0)) throw usage_error("sphere_quadrature: radius must be positive");
    if (order < 2) throw usage_error("sphere_quadrature: order must be at least 2");

    const GaussRule gl = gauss_legendre(order);
    const std::size_t nphi = 2 * order;
    const double hphi = 2.0 * pi / static_cast<double>(nphi);

    double total = 0.0;
    if (n == 3) {
        std::array<double, 3> x{};
        for (std::size_t i = 0; i < order; ++i) {
            const double t = gl.nodes[i];
            const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
            double ring = 0.0;
            for (std::size_t j = 0; j < nphi; ++j) {
                const double phi = hphi * static_cast<double>(j);
                x = {R * st * std::cos(phi), R * st * std::sin(phi), R * t};
                ring += g(std::span<const double>(x));
            }
            total += gl.weights[i] * ring * hphi;
        }
        return total * R * R;
    }

    // First hyperspherical angle: with s = cos(psi) the weight sin^2(psi) dpsi
    // becomes sqrt(1 - s^2) ds, integrated by Gauss-Chebyshev of the second kind.
    std::array<double, 4> x{};
    const double od = static_cast<double>(order);
    for (std::size_t a = 1; a <= order; ++a) {
        const double ang = pi * static_cast<double>(a) / (od + 1.0);
        const double cp = std::cos(ang), sp = std::sin(ang);
        const double wpsi = pi / (od + 1.0) * sp * sp;
        double shell = 0.0;
        for (std::size_t i = 0; i < order; ++i) {
            const double t = gl.nodes[i];
            const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
            double ring = 0.0;
            for (std::size_t j = 0; j < nphi; ++j) {
                const double phi = hphi * static_cast<double>(j);
                x = {R * cp, R * sp * t, R * sp * st * std::cos(phi), R * sp * st * std::sin(phi)};
                ring += g(std::span<const double>(x));
            }
            shell += gl.weights[i] * ring * hphi;
        }
        total += wpsi * shell;
    }
    return total * R * R * R;
}

/// Surface area of the sphere of radius R in R^n, n in {3, 4}.
inline double sphere_area(int n, double R) {
    if (n == 3) return 4.0 * pi * R * R;
    if (n == 4) return 2.0 * pi * pi * R * R * R;
    throw usage_error("sphere_area: dimension must be 3 or 4");
}

}  // namespace exdom

#pragma once

// Complete elliptic integral K(k), the fundamental periods, and the Jacobi
// functions sn, cn, dn for real modulus 0 <= k < 1 and complex argument.

#include <algorithm>
#include <array>
#include <cmath>

#include "exdom/numerics.hpp"
#include "exdom/types.hpp"

namespace exdom {

/// Elliptic modulus k in [0, 1).
class EllipticModulus {
public:
    explicit EllipticModulus(double k) : k_(k) {
        if (!(k >= 0.0)) throw domain_error("elliptic modulus must be >= 0");
        if (!(k < 1.0)) throw domain_error("elliptic modulus must be < 1 (K diverges at k = 1)");
    }
    double k() const { return k_; }
    /// Complementary modulus sqrt(1 - k^2), computed without cancellation.
    double complement() const { return std::sqrt((1.0 - k_) * (1.0 + k_)); }

private:
    double k_;
};

struct JacobiTriple {
    cplx sn, cn, dn;
};

namespace detail {

inline double agm(double a, double b) {
    for (int i = 0; i < 64; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 1e-16 * a) break;
    }
    return 0.5 * (a + b);
}

/// K as a function of the complementary modulus kp = sqrt(1 - k^2) > 0.
inline double K_from_complement(double kp) { return pi / (2.0 * agm(1.0, kp)); }

struct RealJacobi {
    double sn, cn, dn;
};

/// Real-argument sn, cn, dn for modulus m in [0, 1] given its complement mp.
/// Descending Landen (AGM) sequence until the running modulus is below 1e-12,
/// then the trigonometric base case and back substitution.
inline RealJacobi jacobi_real(double u, double m, double mp, double Km) {
    if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
    if (mp == 0.0) {
        const double sech = 1.0 / std::cosh(u);
        return {std::tanh(u), sech, sech};
    }
    // sn, cn have period 4K; reduce to [-2K, 2K].
    const double period = 4.0 * Km;
    u -= period * std::nearbyint(u / period);

    std::array<double, 32> a{}, c{};
    a[0] = 1.0;
    c[0] = m;
    double b = mp;
    int n = 0;
    while (n < 30 && std::abs(c[static_cast<std::size_t>(n)]) >= 1e-12 * a[static_cast<std::size_t>(n)]) {
        const double an = a[static_cast<std::size_t>(n)];
        a[static_cast<std::size_t>(n + 1)] = 0.5 * (an + b);
        c[static_cast<std::size_t>(n + 1)] = 0.5 * (an - b);
        b = std::sqrt(an * b);
        ++n;
    }
    double phi = std::ldexp(a[static_cast<std::size_t>(n)] * u, n);
    for (int j = n; j >= 1; --j) {
        const double ratio = c[static_cast<std::size_t>(j)] / a[static_cast<std::size_t>(j)];
        phi = 0.5 * (phi + std::asin(ratio * std::sin(phi)));
    }
    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    const double dn = std::sqrt(mp * mp + m * m * cn * cn);
    return {sn, cn, dn};
}

}  // namespace detail

/// Complete elliptic integral of the first kind, K(k) = pi / (2 agm(1, k')).
inline double elliptic_K(double k) {
    const EllipticModulus mod(k);
    return detail::K_from_complement(mod.complement());
}

struct Periods {
    double T1 = inf;  // 4 K(k')
    double T2 = 0.0;  // 4 K(k)
    bool T1_finite = false;
};

/// Fundamental periods T1 = 4 K(sqrt(1-k^2)) and T2 = 4 K(k). At k = 0 the
/// first period is infinite and reported as +inf with T1_finite == false.
inline Periods periods(double k) {
    const EllipticModulus mod(k);
    Periods p;
    p.T2 = 4.0 * detail::K_from_complement(mod.complement());
    if (k == 0.0) {
        p.T1 = inf;
        p.T1_finite = false;
    } else {
        p.T1 = 4.0 * detail::K_from_complement(k);
        p.T1_finite = true;
    }
    return p;
}

/// Evaluator bound to one modulus; caches K, K' for repeated calls.
class Jacobi {
public:
    explicit Jacobi(double k) : mod_(k), kp_(mod_.complement()) {
        K_ = detail::K_from_complement(kp_);
        Kp_ = k == 0.0 ? inf : detail::K_from_complement(k);
    }

    double k() const { return mod_.k(); }
    double kp() const { return kp_; }
    double K() const { return K_; }
    double Kp() const { return Kp_; }

    /// Nearest pole of sn, cn, dn: the lattice 2mK + (2n+1) i K'.
    cplx nearest_pole(cplx z) const {
        if (!std::isfinite(Kp_)) return cplx(inf, inf);
        const double m = std::nearbyint(z.real() / (2.0 * K_));
        const double n = std::nearbyint((z.imag() / Kp_ - 1.0) / 2.0);
        return cplx(2.0 * m * K_, (2.0 * n + 1.0) * Kp_);
    }

    double pole_distance(cplx z) const {
        if (!std::isfinite(Kp_)) return inf;
        return std::abs(z - nearest_pole(z));
    }

    /// sn, cn, dn at complex argument via the real/imaginary addition
    /// formulas; throws singular_point_error within 1e-8 of a pole.
    JacobiTriple operator()(cplx z) const {
        if (pole_distance(z) < 1e-8) {
            throw singular_point_error("jacobi: argument within 1e-8 of a pole");
        }
        const double k = mod_.k();
        const auto r = detail::jacobi_real(z.real(), k, kp_, K_);
        if (z.imag() == 0.0) return {r.sn, r.cn, r.dn};
        const auto q = detail::jacobi_real(z.imag(), kp_, k, Kp_);
        const double den = q.cn * q.cn + k * k * r.sn * r.sn * q.sn * q.sn;
        const cplx sn(r.sn * q.dn, r.cn * r.dn * q.sn * q.cn);
        const cplx cn(r.cn * q.cn, -r.sn * r.dn * q.sn * q.dn);
        const cplx dn(r.dn * q.cn * q.dn, -k * k * r.sn * r.cn * q.sn);
        return {sn / den, cn / den, dn / den};
    }

    /// Integral of dn along the straight segment from a to b.
    cplx dn_integral(cplx a, cplx b) const {
        if (a == b) return 0.0;
        if (segment_pole_distance(a, b) < 1e-6) {
            throw singular_point_error(
                "jacobi_phi: integration path passes a pole of dn; re-route the path");
        }
        const cplx d = b - a;
        auto integrand = [&](double t) { return (*this)(a + t * d).dn * d; };
        const double tol = 1e-14 * std::max(1.0, std::abs(d));
        const QuadratureResult q = integrate_adaptive(integrand, Interval(0.0, 1.0), tol);
        if (!q.converged) {
            throw convergence_error("jacobi_phi: quadrature did not converge", q.error_estimate);
        }
        return q.value;
    }

    /// Distance from the segment [a, b] to the pole lattice.
    double segment_pole_distance(cplx a, cplx b) const {
        if (!std::isfinite(Kp_)) return inf;
        const double xlo = std::min(a.real(), b.real()) - 2.0 * K_;
        const double xhi = std::max(a.real(), b.real()) + 2.0 * K_;
        const double ylo = std::min(a.imag(), b.imag()) - 2.0 * Kp_;
        const double yhi = std::max(a.imag(), b.imag()) + 2.0 * Kp_;
        double best = inf;
        for (double m = std::floor(xlo / (2.0 * K_)); m <= std::ceil(xhi / (2.0 * K_)); m += 1.0) {
            for (double n = std::floor((ylo / Kp_ - 1.0) / 2.0);
                 n <= std::ceil((yhi / Kp_ - 1.0) / 2.0); n += 1.0) {
                const cplx p(2.0 * m * K_, (2.0 * n + 1.0) * Kp_);
                const cplx d = b - a;
                double t = std::norm(d) > 0.0 ? ((p - a) * std::conj(d)).real() / std::norm(d) : 0.0;
                t = std::clamp(t, 0.0, 1.0);
                best = std::min(best, std::abs(a + t * d - p));
            }
        }
        return best;
    }

private:
    EllipticModulus mod_;
    double kp_;
    double K_ = 0.0;
    double Kp_ = 0.0;
};

/// sn, cn, dn at complex argument.
inline JacobiTriple jacobi(cplx z, double k) { return Jacobi(k)(z); }

/// phi(z) = integral of dn(t, k) dt from 0 to z along the straight segment.
inline cplx jacobi_phi(cplx z, double k) { return Jacobi(k).dn_integral(0.0, z); }

}  // namespace exdom

#pragma once

// Atomic version of the non-Smirnov construction: a measure mu <= 0 on the
// circle with vanishing first moment, its Schwarz integral F, g = exp(-a F)
// and f' = g / z^2. Univalence of f is tested with Nehari's criterion
// (1 - |z|^2)^2 |Sf(z)| <= 2.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

#include "exdom/numerics.hpp"
#include "exdom/parallel.hpp"
#include "exdom/types.hpp"

namespace exdom {

inline const char* const kZygmundCaveat =
    "atomic surrogate measure: the construction needs a Zygmund-class singular measure; a Nehari pass on an "
    "atomic approximation is evidence about the mechanism, not a certificate of univalence or of the "
    "non-Smirnov property";
inline const char* const kModulusCaveat =
    "Nehari criterion evaluated with |Sf|";

struct AtomicMeasure {
    std::vector<std::pair<double, double>> atoms;  // angle in [0, 2 pi), weight <= 0

    double total_mass() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.second;
        return s;
    }
    cplx first_moment() const {
        cplx s = 0.0;
        for (const auto& [t, w] : atoms) s += w * std::polar(1.0, t);
        return s;
    }
};

/// 2^level equal atoms at the left endpoints of the generation-`level`
/// Cantor intervals, scaled to [0, 2 pi).
inline AtomicMeasure cantor_measure(int level, double mass) {
    if (level < 0 || level > 12) throw usage_error("cantor_measure: level must be in 0..12");
    if (!(mass < 0.0)) throw usage_error("cantor_measure: mass must be negative");
    std::vector<double> pts{0.0};
    double scale = 1.0;
    for (int l = 0; l < level; ++l) {
        scale /= 3.0;
        std::vector<double> next;
        next.reserve(2 * pts.size());
        for (double p : pts) next.push_back(p);
        for (double p : pts) next.push_back(p + 2.0 * scale);
        pts = std::move(next);
    }
    std::sort(pts.begin(), pts.end());
    AtomicMeasure m;
    const double w = mass / static_cast<double>(pts.size());
    for (double p : pts) m.atoms.emplace_back(2.0 * pi * p, w);
    return m;
}

/// Point reflection through the origin, (mu(theta) + mu(theta + pi)) / 2,
/// merging coincident atoms. This zeroes the first moment.
inline AtomicMeasure symmetrize(const AtomicMeasure& m) {
    std::vector<std::pair<double, double>> all;
    for (const auto& [t, w] : m.atoms) {
        all.emplace_back(t, 0.5 * w);
        double r = t + pi;
        if (r >= 2.0 * pi) r -= 2.0 * pi;
        all.emplace_back(r, 0.5 * w);
    }
    std::sort(all.begin(), all.end());
    AtomicMeasure out;
    for (const auto& a : all) {
        if (!out.atoms.empty() && std::abs(out.atoms.back().first - a.first) <= 1e-14) {
            out.atoms.back().second += a.second;
        } else {
            out.atoms.push_back(a);
        }
    }
    if (out.atoms.size() > 1 && out.atoms.front().first + 2.0 * pi - out.atoms.back().first <= 1e-14) {
        out.atoms.front().second += out.atoms.back().second;
        out.atoms.pop_back();
    }
    return out;
}

/// F(z) = (1/2 pi) sum_j w_j (e^{i t_j} + z)/(e^{i t_j} - z).
inline cplx schwarz_integral(const AtomicMeasure& m, cplx z) {
    if (!(std::abs(z) < 1.0 - 1e-12)) throw usage_error("schwarz_integral: need |z| < 1 - 1e-12");
    cplx s = 0.0;
    for (const auto& [t, w] : m.atoms) {
        const cplx e = std::polar(1.0, t);
        const cplx d = e - z;
        if (std::abs(d) < 1e-150) throw singular_point_error("schwarz_integral: too close to an atom");
        s += w * (e + z) / d;
    }
    return s / (2.0 * pi);
}

namespace detail {

/// F'(z) and F''(z) in closed form.
inline std::pair<cplx, cplx> schwarz_integral_derivs(const AtomicMeasure& m, cplx z) {
    cplx d1 = 0.0, d2 = 0.0;
    for (const auto& [t, w] : m.atoms) {
        const cplx e = std::polar(1.0, t);
        const cplx inv = 1.0 / (e - z);
        d1 += w * 2.0 * e * inv * inv;
        d2 += w * 4.0 * e * inv * inv * inv;
    }
    return {d1 / (2.0 * pi), d2 / (2.0 * pi)};
}

}  // namespace detail

struct PseudoMapState {
    AtomicMeasure measure;
    double a = 0.0;
    std::size_t radii = 64;
    std::size_t angles = 256;
};

inline cplx g_of(const PseudoMapState& s, cplx z) { return std::exp(-s.a * schwarz_integral(s.measure, z)); }

/// f'(z) = exp(-a F(z)) / z^2.
inline cplx map_derivative(const PseudoMapState& s, cplx z) {
    if (z == cplx(0.0)) throw singular_point_error("map_derivative: f' has a pole at 0");
    return g_of(s, z) / (z * z);
}

/// |g'(0)| by the Cauchy formula on |z| = 1/2; the residue of f' at 0.
inline double residue_check(const PseudoMapState& s) {
    if (s.a == 0.0) return 0.0;  // g is identically 1
    const auto d = cauchy_derivatives([&](cplx z) { return g_of(s, z); }, 0.0, 0.5, 1, 256);
    return std::abs(d[0]);
}

/// Sf from the decomposition f' = g / z^2: with q = g'/g = -a F',
/// Sf = q' - q^2/2 + (2/z) q.
inline cplx schwarzian(const PseudoMapState& s, cplx z) {
    if (z == cplx(0.0)) throw singular_point_error("schwarzian: z = 0");
    const auto [F1, F2] = detail::schwarz_integral_derivs(s.measure, z);
    const cplx q = -s.a * F1, qp = -s.a * F2;
    return qp - 0.5 * q * q + 2.0 / z * q;
}

/// Sf = f'''/f' - (3/2)(f''/f')^2 with derivatives of f' by the Cauchy
/// formula on a circle of radius `radius` about z.
inline cplx schwarzian_direct(const PseudoMapState& s, cplx z, double radius) {
    const auto d = cauchy_derivatives([&](cplx w) { return map_derivative(s, w); }, z, radius, 2, 64);
    const cplx fp = map_derivative(s, z);
    const cplx r2 = d[0] / fp, r3 = d[1] / fp;
    return r3 - 1.5 * r2 * r2;
}

namespace detail {

inline std::vector<cplx> nehari_grid(const PseudoMapState& s, double r_max) {
    std::vector<double> ang;
    for (std::size_t j = 0; j < s.angles; ++j) ang.push_back(2.0 * pi * static_cast<double>(j) / static_cast<double>(s.angles));
    for (const auto& a : s.measure.atoms) ang.push_back(a.first);
    std::vector<cplx> pts;
    for (std::size_t i = 1; i <= s.radii; ++i) {
        const double r = r_max * static_cast<double>(i) / static_cast<double>(s.radii);
        for (double t : ang) pts.push_back(std::polar(r, t));
    }
    return pts;
}

}  // namespace detail

/// sup (1 - |z|^2)^2 |Sf(z)| over the radial-angular grid plus the atom rays.
inline double nehari_sup(const PseudoMapState& s, double r_max = 0.995) {
    if (!(r_max > 0.0 && r_max < 1.0)) throw usage_error("nehari_sup: r_max must be in (0, 1)");
    const auto pts = detail::nehari_grid(s, r_max);
    std::vector<double> v(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const double w = 1.0 - std::norm(pts[i]);
        v[i] = w * w * std::abs(schwarzian(s, pts[i]));
    });
    double sup = 0.0;
    for (double x : v) sup = std::max(sup, x);
    return sup;
}

/// max over the grid of (1 - |z|^2)^2 |Sf_direct - Sf_decomposition|, with
/// Cauchy radius a quarter of the distance to the circle.
inline double schwarzian_crosscheck(const PseudoMapState& s, double r_max, std::size_t radii, std::size_t angles) {
    PseudoMapState g = s;
    g.radii = radii;
    g.angles = angles;
    const auto pts = detail::nehari_grid(g, r_max);
    std::vector<double> v(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const double r = std::abs(pts[i]);
        const double rad = 0.25 * std::min(r, 1.0 - r);
        const double w = 1.0 - r * r;
        v[i] = w * w * std::abs(schwarzian_direct(s, pts[i], rad) - schwarzian(s, pts[i]));
    });
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

struct CouplingSearch {
    double a = 0.0;
    double sup = 0.0;
    bool capped = false;
    int evaluations = 0;
};

/// Largest tested a with nehari_sup <= 2 (1 - margin): doubling from a = 1
/// until failure (cap 2^30), then 40 bisection steps.
inline CouplingSearch search_coupling(const AtomicMeasure& m, double r_max, std::size_t radii, std::size_t angles,
                                      double margin) {
    if (!(margin > 0.0 && margin < 1.0)) throw usage_error("search_coupling: margin must be in (0, 1)");
    const double target = 2.0 * (1.0 - margin);
    CouplingSearch out;
    auto sup_at = [&](double a) {
        ++out.evaluations;
        return nehari_sup(PseudoMapState{m, a, radii, angles}, r_max);
    };
    double lo = 0.0, lo_sup = sup_at(0.0);
    if (!(lo_sup <= target)) throw error("search_coupling: the Moebius case a = 0 fails the criterion");
    double hi = 1.0;
    double hs = sup_at(hi);
    while (hs <= target) {
        lo = hi;
        lo_sup = hs;
        if (hi >= std::ldexp(1.0, 30)) {
            out.a = lo;
            out.sup = lo_sup;
            out.capped = true;
            return out;
        }
        hi *= 2.0;
        hs = sup_at(hi);
    }
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double ms = sup_at(mid);
        if (ms <= target) {
            lo = mid;
            lo_sup = ms;
        } else {
            hi = mid;
        }
    }
    out.a = lo;
    out.sup = lo_sup;
    return out;
}

/// max ||f'(r e^{it})| - 1| over angles at least `gap` from every atom.
inline double boundary_modulus_deviation(const PseudoMapState& s, double r, double gap, std::size_t angles = 2048) {
    double dev = 0.0;
    for (std::size_t j = 0; j < angles; ++j) {
        const double t = 2.0 * pi * static_cast<double>(j) / static_cast<double>(angles);
        bool far = true;
        for (const auto& a : s.measure.atoms) {
            double d = std::abs(std::remainder(t - a.first, 2.0 * pi));
            if (d < gap) {
                far = false;
                break;
            }
        }
        if (!far) continue;
        dev = std::max(dev, std::abs(std::abs(map_derivative(s, std::polar(r, t))) - 1.0));
    }
    return dev;
}

inline nlohmann::ordered_json pseudocircle_json(const PseudoMapState& s, double sup, double residue, bool pass) {
    nlohmann::ordered_json j;
    j["atoms"] = nlohmann::ordered_json::array();
    for (const auto& [t, w] : s.measure.atoms) j["atoms"].push_back({t, w});
    j["a"] = s.a;
    j["nehari_sup"] = sup;
    j["residue"] = residue;
    j["pass"] = pass;
    j["caveats"] = {kZygmundCaveat, kModulusCaveat};
    return j;
}

}  // namespace exdom

#pragma once

// Elliptic family: f(w) = cos(theta) cn(w,k) + sin(theta) sn(w,k) and
// z(w) = phi(w) + cos(theta) sn(w,k) - sin(theta) cn(w,k), phi' = dn.
// Omega is the image of D0, the component of {Re f > 0} containing w = 0.
//
// Derivatives used throughout, with A = -cos(theta) sn + sin(theta) cn:
//   df/dw = dn A,   dz/dw = dn (1 + f),   f'(z) = A / (1 + f),
// and A^2 + f^2 = 1, so (f')^2 = (1 - f)/(1 + f).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

#include "exdom/domains.hpp"
#include "exdom/level_set.hpp"
#include "exdom/numerics.hpp"
#include "exdom/special.hpp"

namespace exdom {

struct EllipticParams {
    double k = 0.5;
    double theta = 0.0;  // phase, normalized into [0, 2 pi)

    EllipticParams(double k_, double theta_) : k(k_), theta(theta_) {
        EllipticModulus mod(k);
        if (k == 0.0) {
            throw domain_error("elliptic_family: k = 0 degenerates to the strip; use strip_cosh");
        }
        if (!std::isfinite(theta)) throw usage_error("elliptic_family: theta must be finite");
        theta = std::fmod(theta, 2.0 * pi);
        if (theta < 0.0) theta += 2.0 * pi;
        if (!(std::cos(theta) > 1e-12)) {
            throw domain_error("elliptic_family: need cos(theta) > 0 so that Re f(0) > 0");
        }
    }
};

struct TracedArc {
    std::vector<cplx> w;    // polyline in the w-plane
    std::vector<double> v;  // Im f at the vertices, strictly increasing
    std::vector<cplx> phi;  // phi at the vertices
    std::vector<std::size_t> corners;  // vertices that are critical points of f
};

namespace detail {

class EllipticModel {
public:
    EllipticModel(double k, double theta) : J_(k), k_(k), theta_(theta) {
        ct_ = std::cos(theta);
        st_ = std::sin(theta);
        // Normalize tiny sin(theta) so theta = 0 stays exact.
        if (theta == 0.0) st_ = 0.0;
        K_ = J_.K();
        Kp_ = J_.Kp();
        build_grid();
        trace_arcs();
    }

    double k() const { return k_; }
    double theta() const { return theta_; }
    double K() const { return K_; }
    double Kp() const { return Kp_; }
    const Jacobi& jacobi() const { return J_; }

    struct Point {
        JacobiTriple j;
        cplx f, A;
    };

    Point eval(cplx w) const {
        Point p;
        p.j = J_(w);
        p.f = ct_ * p.j.cn + st_ * p.j.sn;
        p.A = -ct_ * p.j.sn + st_ * p.j.cn;
        return p;
    }

    cplx f(cplx w) const { return eval(w).f; }
    cplx df_dw(cplx w) const {
        const Point p = eval(w);
        return p.j.dn * p.A;
    }
    cplx z_from(const Point& p, cplx phi) const { return phi + ct_ * p.j.sn - st_ * p.j.cn; }

    /// phi(w) by a short segment from the nearest D0 grid node.
    cplx phi(cplx w) const {
        const std::size_t n = nearest_mask_node_w(w);
        if (n == npos) return J_.dn_integral(0.0, w);
        return node_phi_[n] + J_.dn_integral(node_w(n), w);
    }
    cplx z(cplx w) const { return z_from(eval(w), phi(w)); }

    bool in_D0(cplx w) const {
        const long i = std::lround(w.real() / hx_);
        const long j = std::lround(w.imag() / hy_);
        bool near_mask = false;
        for (long dj = -1; dj <= 1 && !near_mask; ++dj) {
            for (long di = -1; di <= 1 && !near_mask; ++di) {
                const std::size_t n = index(i + di, j + dj);
                if (n != npos && mask_[n]) near_mask = true;
            }
        }
        if (!near_mask) return false;
        if (std::abs(w.imag()) > Kp_ * (1.0 + 1e-12)) return false;
        if (J_.pole_distance(w) < 1e-8) return false;
        const cplx fv = f(w);
        return fv.real() > -1e-8 * (1.0 + std::abs(fv));
    }

    /// Preimage in D0 of a point z; throws convergence_error if none is found.
    cplx invert(cplx zt) const {
        const double scale = std::max(1.0, std::abs(zt));
        const double tol = 2e-15 * scale;
        const double accept = 1e-11 * scale;
        // nearest nodes in z
        std::vector<std::pair<double, std::size_t>> cand;
        cand.reserve(mask_nodes_.size());
        for (std::size_t n : mask_nodes_) cand.emplace_back(std::abs(node_z_[n] - zt), n);
        const std::size_t keep = std::min<std::size_t>(8, cand.size());
        std::partial_sort(cand.begin(), cand.begin() + static_cast<long>(keep), cand.end());
        double best_res = inf;
        for (std::size_t c = 0; c < keep; ++c) {
            const std::size_t n = cand[c].second;
            auto r = newton_z(zt, node_w(n), node_phi_[n], tol);
            best_res = std::min(best_res, r.residual);
            if (r.residual <= accept && in_D0(r.root)) return r.root;
        }
        // continuation in z from the nearest node
        const std::size_t n0 = cand.front().second;
        cplx w = node_w(n0), ph = node_phi_[n0];
        const cplx z0 = node_z_[n0];
        const int steps = 32;
        for (int s = 1; s <= steps; ++s) {
            const cplx zs = z0 + (zt - z0) * (static_cast<double>(s) / steps);
            auto r = newton_z(zs, w, ph, 2e-15 * std::max(1.0, std::abs(zs)));
            if (!(r.residual <= 1e-11 * std::max(1.0, std::abs(zs)))) break;
            ph = ph + J_.dn_integral(w, r.root);
            w = r.root;
            if (s == steps && in_D0(w)) return w;
        }
        throw convergence_error("elliptic_family: no preimage of z in D0", best_res);
    }

    const std::vector<TracedArc>& arcs() const { return arcs_; }

    /// Point on traced arc `a` with Im f = v, by Newton on f(w) = iv.
    cplx arc_w(std::size_t a, double v, cplx* phi_out = nullptr) const {
        const TracedArc& arc = arcs_[a];
        const auto it = std::lower_bound(arc.v.begin(), arc.v.end(), v);
        std::size_t i = static_cast<std::size_t>(it - arc.v.begin());
        if (i == 0) i = 1;
        if (i >= arc.v.size()) i = arc.v.size() - 1;
        const double t = (v - arc.v[i - 1]) / (arc.v[i] - arc.v[i - 1]);
        const cplx seed = arc.w[i - 1] + std::clamp(t, 0.0, 1.0) * (arc.w[i] - arc.w[i - 1]);
        auto map = [this](cplx w) -> std::pair<cplx, cplx> {
            try {
                const Point p = eval(w);
                return {p.f, p.j.dn * p.A};
            } catch (const singular_point_error&) {
                return {cplx(inf, inf), cplx(inf, inf)};
            }
        };
        const cplx target(0.0, v);
        auto r = newton_invert(map, target, seed, 1e-15 * std::max(1.0, std::abs(v)));
        if (!(r.residual <= 1e-11 * std::max(1.0, std::abs(v)))) {
            throw convergence_error("elliptic_family: boundary point not found", r.residual);
        }
        if (phi_out) {
            const std::size_t anchor = (t < 0.5) ? i - 1 : i;
            *phi_out = arc.phi[anchor] + J_.dn_integral(arc.w[anchor], r.root);
        }
        return r.root;
    }

    std::vector<cplx> interior_nodes(std::size_t n) const {
        std::vector<std::size_t> good;
        for (std::size_t m : mask_nodes_) {
            if (J_.pole_distance(node_w(m)) > 0.1 * Kp_) good.push_back(m);
        }
        const std::size_t stride = std::max<std::size_t>(1, good.size() / std::max<std::size_t>(1, n));
        std::vector<cplx> out;
        for (std::size_t i = 0; i < good.size(); i += stride) out.push_back(node_w(good[i]));
        return out;
    }

    std::size_t mask_count() const { return mask_nodes_.size(); }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    static constexpr int kGridPerK = 48;
    static constexpr double kVmax = 64.0;

    Jacobi J_;
    double k_, theta_, ct_ = 1.0, st_ = 0.0, K_ = 0.0, Kp_ = 0.0;
    double hx_ = 0.0, hy_ = 0.0;
    long I_ = 0, Jn_ = 0;  // node indices run over [-I, I] x [-J, J]
    std::vector<std::uint8_t> mask_;
    std::vector<cplx> node_phi_, node_z_;
    std::vector<std::size_t> mask_nodes_;
    std::vector<TracedArc> arcs_;

    std::size_t index(long i, long j) const {
        if (i < -I_ || i > I_ || j < -Jn_ || j > Jn_) return npos;
        return static_cast<std::size_t>((j + Jn_) * (2 * I_ + 1) + (i + I_));
    }
    cplx node_w(std::size_t n) const {
        const long w = 2 * I_ + 1;
        const long i = static_cast<long>(n) % w - I_;
        const long j = static_cast<long>(n) / w - Jn_;
        return cplx(static_cast<double>(i) * hx_, static_cast<double>(j) * hy_);
    }

    std::size_t nearest_mask_node_w(cplx w) const {
        const long i0 = std::lround(w.real() / hx_);
        const long j0 = std::lround(w.imag() / hy_);
        std::size_t best = npos;
        double bd = inf;
        for (long dj = -2; dj <= 2; ++dj) {
            for (long di = -2; di <= 2; ++di) {
                const std::size_t n = index(i0 + di, j0 + dj);
                if (n == npos || !mask_[n]) continue;
                const double d = std::abs(node_w(n) - w);
                if (d < bd) {
                    bd = d;
                    best = n;
                }
            }
        }
        return best;
    }

    NewtonResult newton_z(cplx zt, cplx w0, cplx phi0, double tol) const {
        // phi is carried along the iterates by short segment integrals
        cplx anchor_w = w0, anchor_phi = phi0;
        auto map = [&](cplx w) -> std::pair<cplx, cplx> {
            try {
                const cplx ph = anchor_phi + J_.dn_integral(anchor_w, w);
                const Point p = eval(w);
                anchor_w = w;
                anchor_phi = ph;
                return {z_from(p, ph), p.j.dn * (1.0 + p.f)};
            } catch (const error&) {
                return {cplx(inf, inf), cplx(inf, inf)};
            }
        };
        return newton_invert(map, zt, w0, tol, 40);
    }

    void build_grid() {
        // Spacing chosen so that the lines Re w = +-K and Im w = +-K' (where
        // poles and critical points live) fall half-way between nodes.
        hx_ = K_ / (kGridPerK + 0.5);
        hy_ = Kp_ / (kGridPerK + 0.5);
        I_ = 2 * kGridPerK + 1;
        Jn_ = 2 * kGridPerK + 1;
        const std::size_t total = static_cast<std::size_t>((2 * I_ + 1) * (2 * Jn_ + 1));
        std::vector<std::uint8_t> positive(total, 0);
        for (std::size_t n = 0; n < total; ++n) {
            const cplx w = node_w(n);
            if (J_.pole_distance(w) < 0.25 * std::min(hx_, hy_)) continue;
            positive[n] = f(w).real() > 1e-12 ? 1 : 0;
        }
        mask_.assign(total, 0);
        node_phi_.assign(total, cplx(0.0));
        node_z_.assign(total, cplx(inf, inf));
        const std::size_t origin = index(0, 0);
        std::deque<std::size_t> queue{origin};
        mask_[origin] = 1;
        while (!queue.empty()) {
            const std::size_t n = queue.front();
            queue.pop_front();
            mask_nodes_.push_back(n);
            const cplx wn = node_w(n);
            const long w = 2 * I_ + 1;
            const long i = static_cast<long>(n) % w - I_;
            const long j = static_cast<long>(n) / w - Jn_;
            if (std::abs(i) == I_) {
                throw domain_error("elliptic_family: D0 reaches the edge of the fundamental rectangle");
            }
            const long di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
            for (int q = 0; q < 4; ++q) {
                const std::size_t m = index(i + di[q], j + dj[q]);
                // For theta != 0 the positive component is a band through the
                // critical points K + (2n+1) i K' where z folds; cut it at |Im w| = K'.
                if (m == npos || mask_[m] || !positive[m] || std::abs(j + dj[q]) > kGridPerK) continue;
                mask_[m] = 1;
                node_phi_[m] = node_phi_[n] + J_.dn_integral(wn, node_w(m));
                queue.push_back(m);
            }
        }
        std::sort(mask_nodes_.begin(), mask_nodes_.end());
        for (std::size_t n : mask_nodes_) node_z_[n] = z_from(eval(node_w(n)), node_phi_[n]);
    }

    // Zeros of dn: (2m+1)K + (2n+1) i K'.
    cplx nearest_critical(cplx w) const {
        const double m = std::floor(w.real() / (2.0 * K_));
        const double n = std::floor(w.imag() / (2.0 * Kp_));
        return cplx((2.0 * m + 1.0) * K_, (2.0 * n + 1.0) * Kp_);
    }

    std::vector<cplx> trace_half(cplx seed, int orientation, double step, std::vector<std::size_t>& corners) const {
        // Re f / (1 + |f|^2) has the same zero set as Re f but stays well
        // scaled near the poles; on the zero set its gradient is the scaled
        // gradient of Re f.
        auto F = [this](cplx w) {
            const cplx fv = f(w);
            return fv.real() / (1.0 + std::norm(fv));
        };
        auto G = [this](cplx w) {
            const Point p = eval(w);
            return std::conj(p.j.dn * p.A) / (1.0 + std::norm(p.f));
        };
        std::vector<cplx> pts;
        cplx start = seed;
        for (int leg = 0; leg < 6; ++leg) {
            bool hit_critical = false;
            cplx crit{};
            TraceOptions opt;
            opt.step = step;
            opt.count = 40000;
            opt.orientation = orientation;
            opt.tolerance = 1e-13;
            opt.stop = [&](cplx w) {
                if (std::abs(w.real()) > 2.0 * K_ || std::abs(w.imag()) > 2.0 * Kp_) return true;
                if (J_.pole_distance(w) < 1e-3) return true;
                if (std::abs(f(w).imag()) >= kVmax) return true;
                const cplx c = nearest_critical(w);
                if (std::abs(w - c) < 1.5 * step && std::abs(f(c).real()) < 1e-9) {
                    hit_critical = true;
                    crit = c;
                    return true;
                }
                return false;
            };
            const Polyline pl = trace_level_set(F, G, start, opt);
            if (pl.points.empty()) throw domain_error("elliptic_family: boundary trace failed: " + pl.stop_reason);
            if (!pl.complete) {
                std::ostringstream msg;
                msg << "elliptic_family: boundary trace stopped (" << pl.stop_reason << ") near w = "
                    << pl.points.back() << " after leg " << leg;
                throw domain_error(msg.str());
            }
            for (std::size_t i = (leg == 0 ? 0 : 1); i < pl.points.size(); ++i) pts.push_back(pl.points[i]);
            if (!hit_critical) return pts;
            // Turn at the saddle: outgoing ray of Re(a d^2) = 0 closest to a
            // left turn (orientation +1) relative to the incoming direction.
            const cplx din = (pts.back() - pts[pts.size() - 2]) / std::abs(pts.back() - pts[pts.size() - 2]);
            const JacobiTriple t = J_(crit);
            const cplx A = -ct_ * t.sn + st_ * t.cn;
            const cplx a = -k_ * k_ * t.sn * t.cn * A;  // f''(crit), since dn(crit) = 0
            const cplx base = std::sqrt(cplx(0.0, 1.0) * std::conj(a) / std::abs(a));
            const cplx rays[4] = {base, -base, base * cplx(0.0, 1.0), -base * cplx(0.0, 1.0)};
            const cplx want = static_cast<double>(orientation) * cplx(0.0, 1.0) * din;
            cplx dout = rays[0];
            for (const cplx& r : rays) {
                if ((std::conj(r) * want).real() > (std::conj(dout) * want).real()) dout = r;
            }
            corners.push_back(pts.size());
            pts.push_back(crit);
            start = crit + step * dout;
        }
        throw domain_error("elliptic_family: too many critical points on one boundary arc");
    }

    void trace_arcs() {
        // Seeds: zeros of f(x) = cos(am x - theta) closest to 0 on each side.
        auto fr = [this](double x) { return f(cplx(x, 0.0)).real(); };
        for (int side : {1, -1}) {
            double lo = 0.0, hi = side * 2.0 * K_;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (fr(mid) > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const cplx seed(0.5 * (lo + hi), 0.0);
            const double step = 0.004 * std::max(K_, Kp_);
            std::vector<std::size_t> ca, cb;
            std::vector<cplx> a = trace_half(seed, 1, step, ca);
            std::vector<cplx> b = trace_half(seed, -1, step, cb);
            // Order so that Im f increases: run the decreasing half backwards.
            if (f(a.back()).imag() < f(b.back()).imag()) {
                std::swap(a, b);
                std::swap(ca, cb);
            }
            TracedArc arc;
            for (std::size_t i = b.size(); i-- > 1;) arc.w.push_back(b[i]);
            const std::size_t seed_index = arc.w.size();
            for (std::size_t c : cb) arc.corners.push_back(b.size() - 1 - c);
            for (std::size_t c : ca) arc.corners.push_back(seed_index + c);
            std::sort(arc.corners.begin(), arc.corners.end());
            arc.w.insert(arc.w.end(), a.begin(), a.end());
            arc.v.resize(arc.w.size());
            arc.phi.resize(arc.w.size());
            for (std::size_t i = 0; i < arc.w.size(); ++i) arc.v[i] = f(arc.w[i]).imag();
            for (std::size_t i = 1; i < arc.v.size(); ++i) {
                if (!(arc.v[i] > arc.v[i - 1])) {
                    throw domain_error("elliptic_family: Im f is not monotone along the traced boundary");
                }
            }
            arc.phi[seed_index] = J_.dn_integral(0.0, arc.w[seed_index]);
            for (std::size_t i = seed_index + 1; i < arc.w.size(); ++i) {
                arc.phi[i] = arc.phi[i - 1] + J_.dn_integral(arc.w[i - 1], arc.w[i]);
            }
            for (std::size_t i = seed_index; i-- > 0;) {
                arc.phi[i] = arc.phi[i + 1] + J_.dn_integral(arc.w[i + 1], arc.w[i]);
            }
            arcs_.push_back(std::move(arc));
        }
    }
};

}  // namespace detail

/// Handle on one member of the elliptic family; cheap to copy.
class EllipticFamily {
public:
    explicit EllipticFamily(const EllipticParams& p)
        : params_(p), model_(std::make_shared<const detail::EllipticModel>(p.k, p.theta)) {}

    const EllipticParams& params() const { return params_; }
    const detail::EllipticModel& model() const { return *model_; }

    cplx f(cplx w) const { return model_->f(w); }
    cplx z(cplx w) const { return model_->z(w); }
    cplx df_dw(cplx w) const { return model_->df_dw(w); }
    cplx dz_dw(cplx w) const {
        const auto p = model_->eval(w);
        return p.j.dn * (1.0 + p.f);
    }
    /// f'(z) at the image of w, with dn cancelled analytically.
    cplx fprime(cplx w) const {
        const auto p = model_->eval(w);
        return p.A / (1.0 + p.f);
    }
    const std::vector<TracedArc>& arcs() const { return model_->arcs(); }

    /// Disk chart for theta = 0: zeta = -i sn / (1 + cn), inverse
    /// w(zeta) = F(2i atanh zeta, k) along a straight amplitude path.
    bool has_disk_chart() const { return params_.theta == 0.0; }
    cplx disk_preimage(cplx zeta) const {
        const double k = params_.k;
        const cplx amp = cplx(0.0, 2.0) * std::atanh(zeta);
        auto integrand = [&](double t) {
            const cplx s = std::sin(t * amp);
            return amp / std::sqrt(1.0 - k * k * s * s);
        };
        auto q = integrate_adaptive(integrand, Interval(0.0, 1.0), 1e-15 * std::max(1.0, std::abs(amp)));
        if (!q.converged && q.error_estimate > 1e-10) {
            throw convergence_error("elliptic disk chart: amplitude integral failed", q.error_estimate);
        }
        const Jacobi& J = model_->jacobi();
        auto map = [&](cplx w) -> std::pair<cplx, cplx> {
            try {
                const JacobiTriple t = J(w);
                return {cplx(0.0, -1.0) * t.sn / (1.0 + t.cn), cplx(0.0, -1.0) * t.dn / (1.0 + t.cn)};
            } catch (const error&) {
                return {cplx(inf, inf), cplx(inf, inf)};
            }
        };
        return newton_invert(map, zeta, q.value, 1e-16, 8).root;
    }

    /// Cayley transform of sn: zeta(w) = (sn - i)/(sn + i).
    cplx cayley_sn_chart(cplx w) const {
        const cplx s = model_->jacobi()(w).sn;
        return (s - cplx(0.0, 1.0)) / (s + cplx(0.0, 1.0));
    }

    RoofDomain domain() const;

private:
    EllipticParams params_;
    std::shared_ptr<const detail::EllipticModel> model_;
};

inline RoofDomain EllipticFamily::domain() const {
    auto m = model_;
    const EllipticFamily self = *this;
    RoofDomain d;
    d.name = "elliptic";
    d.params["k"] = params_.k;
    d.params["theta"] = params_.theta;
    d.contains = [m](cplx z) {
        try {
            const cplx w = m->invert(z);
            return m->f(w).real() > 0.0;
        } catch (const error&) {
            return false;
        }
    };
    d.roof = [m](cplx z) { return m->f(m->invert(z)).real(); };
    d.analytic_deriv = [m](cplx z) {
        const auto p = m->eval(m->invert(z));
        return p.A / (1.0 + p.f);
    };
    d.roof_gradient = [m](cplx z) {
        const auto p = m->eval(m->invert(z));
        return detail::gradient_from_fprime(p.A / (1.0 + p.f));
    };
    for (std::size_t a = 0; a < m->arcs().size(); ++a) {
        const TracedArc& t = m->arcs()[a];
        BoundaryArc arc;
        arc.name = a == 0 ? "gamma_plus" : "gamma_minus";
        arc.param_range = Interval(t.v.front(), t.v.back());
        arc.unbounded = true;
        arc.position = [m, a](double v) {
            cplx ph;
            const cplx w = m->arc_w(a, v, &ph);
            return m->z_from(m->eval(w), ph);
        };
        arc.velocity = [m, a](double v) {
            const auto p = m->eval(m->arc_w(a, v));
            return cplx(0.0, 1.0) * (1.0 + p.f) / p.A;
        };
        d.boundary.push_back(arc);
    }

    ConformalChart c;
    c.reference = ChartReference::elliptic_fundamental;
    c.k = params_.k;
    c.h = [m](cplx w) { return m->z(w); };
    c.h_deriv = [m](cplx w) {
        const auto p = m->eval(w);
        return p.j.dn * (1.0 + p.f);
    };
    c.f_of_h = [m](cplx w) { return m->f(w); };
    c.f_of_h_deriv = [m](cplx w) { return m->df_dw(w); };
    c.in_reference = [m](cplx w) { return m->in_D0(w); };
    c.interior_samples = [m](std::size_t n) { return m->interior_nodes(n); };
    d.chart = c;

    if (has_disk_chart()) {
        ConformalChart dc;
        dc.reference = ChartReference::unit_disk;
        dc.k = params_.k;
        dc.h = [self](cplx s) { return self.z(self.disk_preimage(s)); };
        dc.h_deriv = [self](cplx s) {
            const cplx c1 = 1.0 + self.model().jacobi()(self.disk_preimage(s)).cn;
            return cplx(0.0, 1.0) * c1 * c1;
        };
        dc.f_of_h = [self](cplx s) { return self.f(self.disk_preimage(s)); };
        dc.f_of_h_deriv = [self](cplx s) {
            const JacobiTriple t = self.model().jacobi()(self.disk_preimage(s));
            return cplx(0.0, -1.0) * t.sn * (1.0 + t.cn);
        };
        dc.in_reference = [](cplx s) { return std::abs(s) < 1.0; };
        dc.interior_samples = [](std::size_t n) { return detail::disk_samples(n, 0.9); };
        d.disk_chart = dc;
    }

    struct LazyDistance {
        std::once_flag once;
        std::unique_ptr<detail::ArcDistance> dist;
    };
    auto lazy = std::make_shared<LazyDistance>();
    auto arcs = d.boundary;
    d.boundary_distance = [lazy, arcs](cplx z) {
        std::call_once(lazy->once, [&] { lazy->dist = std::make_unique<detail::ArcDistance>(arcs, 12.0, 1500); });
        return (*lazy->dist)(z);
    };
    d.growth_constant = 1.0 + std::abs(params_.theta > pi ? params_.theta - 2.0 * pi : params_.theta);
    const double th = params_.theta > pi ? params_.theta - 2.0 * pi : params_.theta;
    d.sample_box = {th - 6.0, th + 6.0, -5.0, 5.0};
    d.ode_sign = -1;
    std::ostringstream notes;
    notes << "boundary arcs parametrized by v = Im f (arclength); (f')^2 = -(f-1)/(f+1)";
    if (!has_disk_chart()) notes << "; disk chart only implemented for theta = 0";
    d.notes = notes.str();
    return d;
}

inline RoofDomain elliptic_family(const EllipticParams& p) { return EllipticFamily(p).domain(); }

}  // namespace exdom

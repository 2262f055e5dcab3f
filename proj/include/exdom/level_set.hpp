#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "exdom/types.hpp"

namespace exdom {

struct TraceOptions {
    double step = 0.01;
    std::size_t count = 100;
    int orientation = 1;        // +1: positive side of F on the left of travel
    double tolerance = 1e-12;   // |F| target for the Newton projection
    int max_projection_iterations = 30;
    std::function<bool(cplx)> stop;  // optional early stop, checked after each point
};

struct Polyline {
    std::vector<cplx> points;
    bool complete = true;  // false when the trace stopped on a degenerate gradient
    std::string stop_reason;
};

namespace detail {

template <class F, class G>
bool project_to_level(F& field, G& grad, cplx& p, const TraceOptions& opt) {
    for (int it = 0; it < opt.max_projection_iterations; ++it) {
        const double v = field(p);
        if (std::abs(v) <= opt.tolerance) return true;
        const cplx g = grad(p);
        const double g2 = std::norm(g);
        if (!(g2 > 1e-24)) return false;
        p -= v * g / g2;
    }
    return std::abs(field(p)) <= opt.tolerance;
}

}  // namespace detail

/// Traces the zero set of a real field through `seed`.
///
/// `field(p)` returns F(p); `grad(p)` returns dF/dx + i dF/dy. Each step is a
/// tangent predictor along the gradient rotated by -90 degrees (times the
/// orientation) followed by Newton projection along the gradient. The seed is
/// projected first. Tracing stops early when |grad F| < 1e-12 (flagged as
/// incomplete), when the projection fails, or when `opt.stop` returns true.
template <class F, class G>
Polyline trace_level_set(F&& field, G&& grad, cplx seed, const TraceOptions& opt) {
    if (!(opt.step > 0.0)) throw usage_error("trace_level_set: step must be positive");
    if (opt.orientation != 1 && opt.orientation != -1) {
        throw usage_error("trace_level_set: orientation must be +1 or -1");
    }
    Polyline out;
    cplx p = seed;
    if (!detail::project_to_level(field, grad, p, opt)) {
        out.complete = false;
        out.stop_reason = "seed projection failed";
        return out;
    }
    out.points.push_back(p);
    const double dir = static_cast<double>(opt.orientation);
    while (out.points.size() < opt.count) {
        const cplx g = grad(p);
        const double gn = std::abs(g);
        if (!(gn >= 1e-12)) {
            out.complete = false;
            out.stop_reason = "degenerate gradient";
            return out;
        }
        // (gx, gy) rotated by -90 degrees is (gy, -gx) = -i * g.
        const cplx tangent = dir * cplx(0.0, -1.0) * g / gn;
        cplx q = p + opt.step * tangent;
        if (!detail::project_to_level(field, grad, q, opt)) {
            out.complete = false;
            out.stop_reason = "projection failed";
            return out;
        }
        p = q;
        out.points.push_back(p);
        if (opt.stop && opt.stop(p)) {
            out.stop_reason = "stop predicate";
            return out;
        }
    }
    out.stop_reason = "count reached";
    return out;
}

/// Overload with a central-difference gradient.
template <class F>
Polyline trace_level_set(F&& field, cplx seed, const TraceOptions& opt) {
    auto grad = [&field](cplx p) {
        const double h = 1e-6 * std::max(1.0, std::abs(p));
        return cplx((field(p + h) - field(p - h)) / (2.0 * h),
                    (field(p + cplx(0.0, h)) - field(p - cplx(0.0, h))) / (2.0 * h));
    };
    return trace_level_set(field, grad, seed, opt);
}

}  // namespace exdom

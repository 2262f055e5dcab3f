#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "exdom/errors.hpp"

namespace exdom {

using cplx = std::complex<double>;

/// Planar gradient (d/dx, d/dy).
using Vec2 = std::array<double, 2>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double inf = std::numeric_limits<double>::infinity();

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(lo < hi)) throw usage_error("Interval requires lo < hi");
    }
    double length() const { return hi - lo; }
};

/// Axis-aligned sampling box in the (x, y) plane.
struct Box {
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
};

inline double norm2(const Vec2& v) { return std::hypot(v[0], v[1]); }

}  // namespace exdom

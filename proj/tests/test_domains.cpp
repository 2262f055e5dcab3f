#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "exdom/catalog.hpp"
#include "exdom/domains.hpp"

using namespace exdom;

namespace {

double grad_norm(const RoofDomain& d, cplx p) { return norm2(d.roof_gradient(p)); }

}  // namespace

TEST(Halfplane, RoofAndGradient) {
    const auto d = halfplane();
    EXPECT_DOUBLE_EQ(d.roof({3.0, 4.0}), 3.0);
    for (cplx p : {cplx(0.1, -5.0), cplx(2.0, 0.0), cplx(7.0, 3.0)}) EXPECT_NEAR(grad_norm(d, p), 1.0, 1e-15);
    EXPECT_TRUE(d.contains({1.0, 0.0}));
    EXPECT_FALSE(d.contains({-1.0, 0.0}));
}

TEST(Halfplane, DiskChart) {
    const auto d = halfplane();
    ASSERT_TRUE(d.disk_chart);
    EXPECT_NEAR(std::abs(d.disk_chart->f_of_h(0.0) - 1.0), 0.0, 1e-15);
    const cplx z(0.3, -0.4);
    EXPECT_NEAR(std::abs(d.disk_chart->h(z) - (1.0 + z) / (1.0 - z)), 0.0, 1e-14);
}

TEST(ExteriorDisk, Values) {
    const auto d = exterior_disk(1.0);
    EXPECT_NEAR(d.roof(2.0), std::log(2.0), 1e-15);
    EXPECT_NEAR(grad_norm(d, 2.0), 0.5, 1e-15);
    for (double t : {0.0, 1.0, 2.5, 4.0}) {
        const cplx z = std::polar(1.0, t);
        EXPECT_NEAR(d.roof(z), 0.0, 1e-15);
        EXPECT_NEAR(grad_norm(d, z), 1.0, 1e-15);
    }
    ASSERT_TRUE(d.analytic_deriv);
    EXPECT_NEAR(std::abs(d.analytic_deriv({0.0, 2.0}) - 1.0 / cplx(0.0, 2.0)), 0.0, 1e-15);
}

TEST(ExteriorDisk, BoundaryArcRadius2) {
    const auto d = exterior_disk(2.0);
    double worst = 0.0;
    for (const auto& arc : d.boundary) {
        for (double t : arc_parameters(arc, 1000, 10.0)) {
            const cplx z = arc.position(t);
            worst = std::max({worst, std::abs(d.roof(z)), std::abs(grad_norm(d, z) - 1.0)});
        }
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(ExteriorDisk, RejectsBadRadius) {
    EXPECT_THROW(exterior_disk(0.0), usage_error);
    EXPECT_THROW(exterior_disk(-1.0), usage_error);
}

TEST(StripCosh, OriginAndBoundaryPoint) {
    const auto d = strip_cosh();
    EXPECT_NEAR(d.roof(0.0), 1.0, 1e-14);
    ASSERT_TRUE(d.analytic_deriv);
    EXPECT_NEAR(std::abs(d.analytic_deriv(0.0)), 0.0, 1e-14);
    const cplx b(0.0, pi / 2 + 1.0);
    EXPECT_NEAR(d.roof(b), 0.0, 1e-12);
    EXPECT_NEAR(grad_norm(d, b), 1.0, 1e-12);
    // f' = tanh(w/2) at w = i pi/2
    EXPECT_NEAR(std::abs(d.analytic_deriv(b) - std::tanh(cplx(0.0, pi / 4))), 0.0, 1e-12);
}

TEST(StripCosh, ArcsFollowCoshCurve) {
    const auto d = strip_cosh();
    ASSERT_EQ(d.boundary.size(), 2u);
    for (const auto& arc : d.boundary) {
        for (double t : arc_parameters(arc, 200, 10.0)) {
            const cplx z = arc.position(t);
            EXPECT_NEAR(std::abs(z.imag()) - (pi / 2 + std::cosh(z.real())), 0.0, 1e-12 * std::cosh(z.real()));
        }
    }
}

TEST(StripCosh, RoofMatchesForwardMap) {
    // z = w + sinh w, u = Re cosh w on the strip
    const auto d = strip_cosh();
    for (cplx w : {cplx(0.3, 0.2), cplx(-1.2, 1.1), cplx(2.0, -0.7)}) {
        const cplx z = w + std::sinh(w);
        EXPECT_NEAR(d.roof(z), std::cosh(w).real(), 1e-11 * std::max(1.0, std::abs(z)));
    }
}

TEST(StripCosh, DiskChartDerivative) {
    const auto d = strip_cosh();
    ASSERT_TRUE(d.disk_chart);
    for (cplx z : {cplx(0.1, 0.2), cplx(-0.5, 0.4), cplx(0.0, -0.8)}) {
        const cplx expect = 4.0 / ((1.0 - z) * (1.0 - z) * (1.0 + z) * (1.0 + z));
        EXPECT_NEAR(std::abs(d.disk_chart->h_deriv(z) - expect), 0.0, 1e-12 * std::abs(expect));
        EXPECT_NEAR(std::abs(d.disk_chart->f_of_h_deriv(z) / d.disk_chart->h_deriv(z) - z), 0.0, 1e-12);
    }
}

TEST(Cone4d, NormalizedRoof) {
    const auto d = cone4d();
    EXPECT_EQ(d.ambient_dim, 4);
    // the unnormalized form (y^2 - x^2)/y is 2 sqrt 2 times the roof
    EXPECT_NEAR(2.0 * std::sqrt(2.0) * d.roof({0.0, 1.0}), 1.0, 1e-15);
    for (double y : {0.5, 1.0, 3.0}) {
        EXPECT_NEAR(d.roof({y, y}), 0.0, 1e-15);
        EXPECT_NEAR(grad_norm(d, {y, y}), 1.0, 1e-14);
        EXPECT_NEAR(grad_norm(d, {-y, y}), 1.0, 1e-14);
    }
    EXPECT_THROW(d.roof({0.0, -1.0}), domain_error);
}

TEST(ExteriorBall, Values) {
    const auto b3 = exterior_ball(3, 1.0);
    EXPECT_NEAR(b3.roof(2.0), 0.5, 1e-15);
    EXPECT_NEAR(b3.roof(1.0), 0.0, 1e-15);
    EXPECT_NEAR(grad_norm(b3, cplx(0.0, 1.0)), 1.0, 1e-15);
    const auto b4 = exterior_ball(4, 1.0);
    EXPECT_NEAR(b4.roof(1e8), 0.5, 1e-12);
    EXPECT_THROW(b4.roof(0.5), domain_error);
    EXPECT_THROW(exterior_ball(5, 1.0), usage_error);
}

TEST(ExteriorBall, BoundaryRoundoffIsNotInside) {
    const auto b = exterior_ball(4, 2.0);
    for (double t : arc_parameters(b.boundary[0], 1000, 10.0)) EXPECT_NO_THROW(b.roof(b.boundary[0].position(t)));
}

TEST(BoundaryCsv, HeaderAndRows) {
    const auto d = strip_cosh();
    std::ostringstream os;
    write_boundary_csv(os, d, 500, 10.0);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "t,x,y");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    EXPECT_EQ(rows, 1000);
}

TEST(Catalog, NamesAndDefaults) {
    EXPECT_EQ(catalog_names().size(), 6u);
    EXPECT_EQ(make_domain("exterior_disk").params.at("R"), 1.0);
    EXPECT_EQ(make_domain("exterior_disk", {{"R", 2.0}}).params.at("R"), 2.0);
    EXPECT_THROW(make_domain("disk"), usage_error);
    EXPECT_THROW(make_domain("halfplane", {{"R", 2.0}}), usage_error);
    EXPECT_THROW(make_domain("exterior_ball", {{"n", 5.0}}), usage_error);
}

TEST(Catalog, RandomInteriorPositivity) {
    for (const auto& name : catalog_names()) {
        if (name == "elliptic") continue;  // covered in test_elliptic
        const auto d = make_domain(name);
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> X(d.sample_box.xmin, d.sample_box.xmax),
            Y(d.sample_box.ymin, d.sample_box.ymax);
        int n = 0;
        while (n < 200) {
            const cplx p(X(rng), Y(rng));
            if (!d.contains(p)) continue;
            EXPECT_GT(d.roof(p), 0.0) << name << " at " << p;
            ++n;
        }
    }
}

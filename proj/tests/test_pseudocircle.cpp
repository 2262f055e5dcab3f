#include <gtest/gtest.h>

#include <cmath>

#include "exdom/pseudocircle.hpp"

using namespace exdom;

TEST(CantorMeasure, Levels) {
    const auto m0 = cantor_measure(0, -1.0);
    ASSERT_EQ(m0.atoms.size(), 1u);
    EXPECT_EQ(m0.atoms[0].first, 0.0);
    EXPECT_EQ(m0.atoms[0].second, -1.0);
    const auto m1 = cantor_measure(1, -1.0);
    ASSERT_EQ(m1.atoms.size(), 2u);
    EXPECT_NEAR(m1.atoms[1].first, 2.0 / 3.0 * 2.0 * pi, 1e-15);
    EXPECT_EQ(m1.atoms[1].second, -0.5);
    const auto m6 = cantor_measure(6, -2.0);
    EXPECT_EQ(m6.atoms.size(), 64u);
    EXPECT_NEAR(m6.total_mass(), -2.0, 1e-15);
    EXPECT_THROW(cantor_measure(3, 0.0), usage_error);
    EXPECT_THROW(cantor_measure(13, -1.0), usage_error);
}

TEST(Symmetrize, Examples) {
    const auto s = symmetrize(AtomicMeasure{{{pi / 2, -1.0}}});
    ASSERT_EQ(s.atoms.size(), 2u);
    EXPECT_NEAR(s.atoms[0].first, pi / 2, 1e-15);
    EXPECT_NEAR(s.atoms[1].first, 3 * pi / 2, 1e-15);
    EXPECT_EQ(s.atoms[0].second, -0.5);
    EXPECT_LE(std::abs(s.first_moment()), 1e-15);

    const auto again = symmetrize(s);
    ASSERT_EQ(again.atoms.size(), 2u);
    EXPECT_EQ(again.atoms[0].second, -0.5);

    const auto c = symmetrize(cantor_measure(4, -1.0));
    EXPECT_LE(std::abs(c.first_moment()), 1e-15);
    EXPECT_NEAR(c.total_mass(), -1.0, 1e-15);
}

TEST(SchwarzIntegral, Examples) {
    const auto m = cantor_measure(3, -1.5);
    EXPECT_NEAR(std::abs(schwarz_integral(m, 0.0) - m.total_mass() / (2.0 * pi)), 0.0, 1e-15);
    const AtomicMeasure one{{{0.0, -1.0}}};
    EXPECT_NEAR(std::abs(schwarz_integral(one, 0.5) + 3.0 / (2.0 * pi)), 0.0, 1e-15);
    EXPECT_THROW(schwarz_integral(one, 1.0), usage_error);
    const auto s = symmetrize(cantor_measure(5, -1.0));
    EXPECT_LE(std::abs(detail::schwarz_integral_derivs(s, 0.0).first), 1e-14);
}

TEST(MapDerivative, Moebius) {
    const PseudoMapState s{symmetrize(cantor_measure(4, -1.0)), 0.0};
    for (cplx z : {cplx(0.5, 0.1), cplx(-0.2, 0.7)}) EXPECT_NEAR(std::abs(map_derivative(s, z) - 1.0 / (z * z)), 0.0, 1e-15);
    EXPECT_THROW(map_derivative(s, 0.0), singular_point_error);
    EXPECT_EQ(residue_check(s), 0.0);
    EXPECT_EQ(nehari_sup(s), 0.0);
}

TEST(MapDerivative, BoundaryModulus) {
    const PseudoMapState s{symmetrize(cantor_measure(2, -1.0)), 0.3};
    const double d1 = boundary_modulus_deviation(s, 0.99, 0.2);
    const double d2 = boundary_modulus_deviation(s, 0.999, 0.2);
    EXPECT_LT(d2, d1);
    EXPECT_LT(d2, 1e-2);
}

TEST(Residue, SymmetrizedAndControl) {
    const PseudoMapState s{symmetrize(cantor_measure(4, -1.0)), 0.1};
    EXPECT_LE(residue_check(s), 1e-12);
    const PseudoMapState u{AtomicMeasure{{{1.0, -1.0}}}, 0.1};
    EXPECT_GT(residue_check(u), 1e-3);
    // g'(0) = -a F'(0) g(0) with F'(0) = (1/pi) sum w e^{-i t}
    const double expect = 0.1 / pi * std::exp(0.1 / (2.0 * pi));
    EXPECT_NEAR(residue_check(u), expect, 1e-12);
}

TEST(Schwarzian, DecompositionMatchesDirect) {
    const PseudoMapState s{symmetrize(cantor_measure(3, -1.0)), 0.7};
    for (cplx z : {cplx(0.3, 0.2), cplx(-0.5, 0.1), cplx(0.1, -0.6)}) {
        const cplx direct = schwarzian_direct(s, z, 0.05);
        EXPECT_NEAR(std::abs(schwarzian(s, z) - direct), 0.0, 1e-7 * std::max(1.0, std::abs(direct))) << z;
    }
    EXPECT_LE(schwarzian_crosscheck(s, 0.9, 8, 32), 1e-6);
}

TEST(Nehari, SmallAndLargeCoupling) {
    const auto pair = symmetrize(AtomicMeasure{{{0.0, -1.0}}});
    EXPECT_LE(nehari_sup(PseudoMapState{pair, 0.01}, 0.99), 2.0);
    EXPECT_GT(nehari_sup(PseudoMapState{pair, 100.0}, 0.99), 2.0);
}

TEST(Nehari, ContinuityInCoupling) {
    const PseudoMapState s{symmetrize(cantor_measure(3, -1.0)), 0.4};
    PseudoMapState t = s;
    t.a += 1e-4;
    EXPECT_LE(std::abs(nehari_sup(s) - nehari_sup(t)), 1e-4 * 100.0);
}

TEST(SearchCoupling, Level6) {
    const auto m = symmetrize(cantor_measure(6, -1.0));
    const auto r = search_coupling(m, 0.995, 32, 128, 0.05);
    EXPECT_GT(r.a, 0.0);
    EXPECT_LE(r.sup, 1.9);
    EXPECT_FALSE(r.capped);
}

TEST(SearchCoupling, CapReached) {
    // no atoms: the map stays Moebius for every a
    const auto r = search_coupling(AtomicMeasure{}, 0.9, 4, 8, 0.05);
    EXPECT_TRUE(r.capped);
    EXPECT_EQ(r.sup, 0.0);
}

TEST(PseudocircleJson, CarriesCaveats) {
    const PseudoMapState s{symmetrize(cantor_measure(1, -1.0)), 0.2};
    const auto j = pseudocircle_json(s, 0.5, 0.0, true);
    for (const char* key : {"atoms", "a", "nehari_sup", "residue", "pass", "caveats"}) EXPECT_TRUE(j.contains(key));
    EXPECT_EQ(j["atoms"].size(), s.measure.atoms.size());
    EXPECT_NE(j["caveats"][0].get<std::string>().find("Zygmund"), std::string::npos);
}

// Acceptance runner: `acceptance --criterion N` prints one pass/fail line for
// criterion N followed by indented diagnostics; without the flag all ten run.

#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "exdom/catalog.hpp"
#include "exdom/cli.hpp"
#include "exdom/pseudocircle.hpp"
#include "exdom/special.hpp"
#include "exdom/verify.hpp"

using namespace exdom;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> lines;

    void note(const std::string& s) { lines.push_back(s); }
    void check(const std::string& label, double value, double tol, bool ok) {
        std::ostringstream os;
        os << std::setprecision(4) << (ok ? "ok   " : "FAIL ") << label << ": " << value << std::setprecision(10)
           << " (tol " << tol << ")";
        lines.push_back(os.str());
        pass = pass && ok;
    }
    void le(const std::string& label, double value, double tol) { check(label, value, tol, value <= tol); }
    void expect(const std::string& label, bool ok, const std::string& detail = {}) {
        lines.push_back(std::string(ok ? "ok   " : "FAIL ") + label + (detail.empty() ? "" : ": " + detail));
        pass = pass && ok;
    }
};

std::string fmt(double v, int p = 6) {
    std::ostringstream os;
    os << std::setprecision(p) << v;
    return os.str();
}

std::string fmt(cplx z, int p = 6) { return "(" + fmt(z.real(), p) + ", " + fmt(z.imag(), p) + ")"; }

const ResidualReport& find(const std::vector<ResidualReport>& v, const std::string& name) {
    for (const auto& r : v) {
        if (r.check_name == name) return r;
    }
    throw usage_error("missing check " + name);
}

// 1. catalog boundary and harmonicity
Outcome criterion1() {
    Outcome o;
    struct Case {
        std::string label;
        RoofDomain d;
        double tol_b;
    };
    const std::vector<Case> cases = {{"halfplane", halfplane(), 1e-10},
                                     {"exterior_disk(1)", exterior_disk(1.0), 1e-10},
                                     {"exterior_disk(2)", exterior_disk(2.0), 1e-10},
                                     {"strip_cosh", strip_cosh(), 1e-8}};
    for (const auto& c : cases) {
        const auto b = boundary_report(c.d, 1000, 10.0);
        o.le(c.label + " dirichlet max over " + std::to_string(b[0].samples), b[0].max_residual, c.tol_b);
        o.le(c.label + " neumann max over " + std::to_string(b[1].samples), b[1].max_residual, c.tol_b);
        o.expect(c.label + " boundary evaluations", b[0].notes.find("failures") == std::string::npos &&
                                                        b[1].notes.find("failures") == std::string::npos);
        GridSpec g;
        g.grid = 2;
        g.random = 1000;
        const auto in = interior_report(c.d, g);
        const auto& h = find(in, "harmonicity");
        o.le(c.label + " harmonicity max over " + std::to_string(h.samples), h.max_residual, 1e-6);
    }
    return o;
}

// 2. elliptic family
Outcome criterion2() {
    Outcome o;
    for (double k : {0.3, 0.7}) {
        for (double th : {0.0, pi / 6}) {
            const std::string tag = "k=" + fmt(k) + " theta=" + fmt(th, 4);
            const EllipticFamily E{EllipticParams(k, th)};
            const auto tr = elliptic_trace_report(E);
            o.le(tag + " |Re f| on gamma+- (" + std::to_string(tr[0].samples) + " vertices)", tr[0].max_residual, 1e-8);
            o.le(tag + " ||f'| - 1| on gamma+-", tr[1].max_residual, 1e-6);
            const auto d = E.domain();
            const auto ode = ode_residual(d, 400);
            o.le(tag + " squared ODE residual, sigma = " + fmt(static_cast<double>(d.ode_sign)), ode.max_residual, 1e-8);
        }
    }
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double jac = 0.0, trig = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double k = 0.05 + 0.9 * U(rng);
        const Jacobi J(k);
        const cplx w((2 * U(rng) - 1) * J.K(), (2 * U(rng) - 1) * 0.9 * J.Kp());
        const auto t = J(w);
        const double scale = std::max({1.0, std::norm(t.sn), std::norm(t.cn), std::norm(t.dn)});
        jac = std::max({jac, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0) / scale,
                        std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1.0) / scale});
        const double th = 2 * pi * U(rng);
        const cplx a = -t.sn * std::cos(th) + t.cn * std::sin(th);
        const cplx b = t.cn * std::cos(th) + t.sn * std::sin(th);
        trig = std::max(trig, std::abs(a * a + b * b - 1.0) / scale);
    }
    o.le("Jacobi identities on 200 random samples (relative to the largest squared term)", jac, 1e-12);
    o.le("|K(0) - pi/2|", std::abs(elliptic_K(0.0) - pi / 2), 1e-12);
    o.le("trig identity on 200 random samples", trig, 1e-10);
    return o;
}

// 3. factorization
Outcome criterion3() {
    Outcome o;
    {
        const auto f = factorization_check(strip_cosh(), 0.9, 400);
        o.le("strip_cosh h' = 4/((1-z)^2(1+z)^2)", find(f.checks, "h_prime_rational").max_residual, 1e-10);
        o.le("strip_cosh f'(h(z)) = z", find(f.checks, "f_prime_of_h").max_residual, 1e-10);
        bool at_pm1 = f.atoms.atoms.size() == 2;
        std::string where;
        for (const auto& a : f.atoms.atoms) {
            at_pm1 = at_pm1 && std::min(std::abs(a.first - 1.0), std::abs(a.first + 1.0)) <= 1e-6;
            where += " " + fmt(a.first);
        }
        o.expect("strip_cosh two atoms at +-1", at_pm1, "found" + where);
    }
    {
        const auto f = factorization_check(halfplane(), 0.9, 400);
        const bool one = f.atoms.atoms.size() == 1 && std::abs(f.atoms.atoms[0].first - 1.0) <= 1e-6;
        o.expect("halfplane one atom at 1", one,
                 "found " + std::to_string(f.atoms.atoms.size()) +
                     (f.atoms.atoms.empty() ? "" : " at " + fmt(f.atoms.atoms[0].first)));
        o.le("halfplane f'(h) unimodular constant", find(f.checks, "unimodular_constant").max_residual, 1e-10);
        o.le("halfplane R = 2C/(1-z)^2", find(f.checks, "R_rational").max_residual, 1e-10);
    }
    for (double k : {0.3, 0.7}) {
        const EllipticFamily E{EllipticParams(k, 0.0)};
        const auto f = factorization_check(E.domain(), 0.9, 400);
        const auto& r = find(f.checks, "atoms_vs_predicted");
        const cplx zp = (1.0 - cplx(0.0, k)) / (1.0 + cplx(0.0, k));
        o.le("elliptic k=" + fmt(k) + " atoms vs +-(1-ik)/(1+ik) = +-" + fmt(zp), r.max_residual, 1e-6);
        std::string where;
        for (const auto& a : f.atoms.atoms) where += " " + fmt(a.first) + " (w=" + fmt(a.second, 3) + ")";
        o.note("     detected atoms of R = f'(h) h' for the disk chart of D0:" + where);
        o.note("     chart h' and f'(h) residuals: " + fmt(find(f.checks, "h_prime_rational").max_residual, 3) + ", " +
               fmt(find(f.checks, "f_prime_of_h").max_residual, 3));
        const Jacobi J(k);
        const cplx crit(J.K(), J.Kp());
        o.note("     (sn - i)/(sn + i) at the dn zero K + iK' = " + fmt(E.cayley_sn_chart(crit)) +
               "; dz/dw vanishes there (|dz/dw| = " + fmt(std::abs(E.dz_dw(crit)), 3) + ")");
    }
    return o;
}

// 4. Schwarz function relation
Outcome criterion4() {
    Outcome o;
    const std::vector<std::pair<std::string, RoofDomain>> cases = {
        {"halfplane", halfplane()}, {"exterior_disk(1)", exterior_disk(1.0)}, {"strip_cosh", strip_cosh()}};
    for (const auto& [label, d] : cases) {
        const auto s = schwarz_report(d, 1000, 10.0);
        o.le(label + " uz_schwarz", find(s, "uz_schwarz").max_residual, 1e-8);
        o.le(label + " |c_fit - 1/2|", find(s, "c_fit").max_residual, 1e-6);
        o.le(label + " ||S'| - 1|", find(s, "schwarz_modulus").max_residual, 1e-10);
        o.le(label + " |T^2 S' - 1|", find(s, "tangent_schwarz").max_residual, 1e-10);
    }
    return o;
}

// 5. null quadrature
Outcome criterion5() {
    Outcome o;
    const auto disk = exterior_disk(1.0);
    for (int m : {1, 2, 3}) o.le("exterior_disk m=" + std::to_string(m), null_quadrature(disk, 0.0, m, 20.0).max_residual, 1e-12);

    const auto sc = strip_cosh();
    try {
        const auto r = null_quadrature(sc, 0.0, 2, 20.0);
        o.le("strip_cosh pole 0, m=2, T=20", r.max_residual, 1e-6);
    } catch (const usage_error& e) {
        o.expect("strip_cosh pole 0, m=2, T=20", false, e.what());
    }
    const double i15 = std::abs(detail::arclength_integral(sc, 0.0, 2, 15.0, nullptr));
    const double i20 = std::abs(detail::arclength_integral(sc, 0.0, 2, 20.0, nullptr));
    const double i25 = std::abs(detail::arclength_integral(sc, 0.0, 2, 25.0, nullptr));
    o.expect("strip_cosh pole 0: |I(25)| < |I(15)|", i25 < i15, fmt(i25, 12) + " vs " + fmt(i15, 12));
    o.note("     0 satisfies |y| < pi/2 + cosh x, so it lies in the domain; |I(T)| for T = 15, 20, 25: " + fmt(i15) +
           ", " + fmt(i20) + ", " + fmt(i25));
    const cplx q(0.0, 10.0);
    const double c15 = null_quadrature(sc, q, 2, 15.0).max_residual;
    const double c20 = null_quadrature(sc, q, 2, 20.0).max_residual;
    const double c25 = null_quadrature(sc, q, 2, 25.0).max_residual;
    o.note("     supplementary, pole 10i in the complement: |I(T)| for T = 15, 20, 25: " + fmt(c15, 3) + ", " +
           fmt(c20, 3) + ", " + fmt(c25, 3));
    return o;
}

// 6. growth bounds
Outcome criterion6() {
    Outcome o;
    GridSpec g;
    g.grid = 50;
    g.random = 10000;
    for (const auto& name : catalog_names()) {
        const auto d = make_domain(name);
        if (d.ambient_dim != 2) continue;
        const auto in = interior_report(d, g);
        const auto& gb = find(in, "gradient_bound");
        o.le(name + " sup |grad u| on " + std::to_string(gb.samples) + " grid points", gb.max_residual, 1.0 + 1e-6);
        const auto& h = find(in, "harnack");
        o.check(name + " max u(a) - 2 dist(a, boundary) on " + std::to_string(h.samples) + " points", h.max_residual,
                h.tolerance, h.pass);
        const auto& lg = find(in, "linear_growth");
        o.check(name + " max u(a)/(|a| + C), C = " + fmt(d.growth_constant), lg.max_residual, lg.tolerance, lg.pass);
    }
    return o;
}

// 7. axisymmetric suite
Outcome criterion7() {
    Outcome o;
    const auto cone = cone4d();
    const auto m = meridian_report(cone, 30, 200, 10.0);
    o.le("cone4d meridian residual on 30x30", find(m, "meridian").max_residual, 1e-8);
    o.le("cone4d y u lift residual on 30x30", find(m, "lift_harmonic").max_residual, 1e-8);
    o.le("cone4d W two ways", find(m, "w_two_ways").max_residual, 1e-6);
    const auto& wi = find(m, "w_identity");
    o.le("cone4d W identity on y = +-x", wi.max_residual, 1e-6);
    o.note("     " + wi.notes);
    for (int n : {3, 4}) {
        for (double R : {1.0, 2.0}) {
            const auto b = boundary_report(exterior_ball(n, R), 1000, 10.0);
            const std::string tag = "exterior_ball n=" + std::to_string(n) + " R=" + fmt(R);
            o.le(tag + " dirichlet", b[0].max_residual, 1e-8);
            o.le(tag + " neumann", b[1].max_residual, 1e-8);
        }
    }
    return o;
}

// 8. single layer
Outcome criterion8() {
    Outcome o;
    for (int n : {3, 4}) {
        const auto r = single_layer_check(n, 1.0, 2.0, 32);
        o.le("n=" + std::to_string(n) + " R=1 |y|=2 relative error", r.max_residual, 1e-8);
        o.note("     " + r.notes);
    }
    return o;
}

// 9. pseudocircle
Outcome criterion9() {
    Outcome o;
    const auto mu = symmetrize(cantor_measure(6, -1.0));
    const PseudoMapState zero{mu, 0.0};
    o.expect("a=0: nehari_sup == 0", nehari_sup(zero) == 0.0, fmt(nehari_sup(zero)));
    bool moebius = true;
    for (cplx z : {cplx(0.5, 0.1), cplx(-0.3, 0.8), cplx(0.01, -0.02)}) moebius = moebius && map_derivative(zero, z) == 1.0 / (z * z);
    o.expect("a=0: f' == 1/z^2", moebius);

    o.note("     level-6 symmetrized Cantor measure: " + std::to_string(mu.atoms.size()) + " atoms, |first moment| = " +
           fmt(std::abs(mu.first_moment()), 3));
    const auto cs = search_coupling(mu, 0.995, 64, 256, 0.05);
    o.check("search_coupling a* > 0", cs.a, 0.0, cs.a > 0.0);
    o.le("nehari_sup(a*) on r <= 0.995", cs.sup, 1.9);
    o.note("     a* = " + fmt(cs.a, 10) + " after " + std::to_string(cs.evaluations) + " evaluations");
    const PseudoMapState s{mu, cs.a};
    o.le("residue at a*", residue_check(s), 1e-12);

    std::size_t far = 0;
    for (std::size_t j = 0; j < 2048; ++j) {
        const double t = 2.0 * pi * static_cast<double>(j) / 2048.0;
        bool ok = true;
        for (const auto& a : mu.atoms) ok = ok && std::abs(std::remainder(t - a.first, 2.0 * pi)) >= 0.1;
        far += ok;
    }
    o.expect("angles at least 0.1 from every atom exist", far > 0, std::to_string(far) + " of 2048");
    o.le("max ||f'(0.999 e^it)| - 1| on those angles", boundary_modulus_deviation(s, 0.999, 0.1), 1e-2);

    const auto j = pseudocircle_json(s, cs.sup, residue_check(s), true).dump();
    o.expect("report carries the Zygmund caveat", j.find("Zygmund") != std::string::npos);

    const double cross = schwarzian_crosscheck(s, 0.95, 16, 64);
    o.note("     Schwarzian decomposition vs Cauchy derivatives of f' (weighted, r <= 0.95): " + fmt(cross, 3));
    double flipped = 0.0;
    for (cplx z : {cplx(0.3, 0.2), cplx(-0.5, 0.4), cplx(0.1, -0.7)}) {
        const auto [F1, F2] = detail::schwarz_integral_derivs(mu, z);
        const cplx q = -s.a * F1, qp = -s.a * F2;
        flipped = std::max(flipped, std::abs(qp - 0.5 * q * q - 2.0 / z * q - schwarzian_direct(s, z, 0.05)));
    }
    o.note("     with the opposite sign on the 2q/z term the mismatch is " + fmt(flipped, 3));
    return o;
}

// 10. determinism
Outcome criterion10() {
    Outcome o;
    const std::vector<std::vector<std::string>> suites = {
        {"verify", "halfplane", "--samples", "500", "--random", "500"},
        {"verify", "exterior_disk", "--R", "2", "--samples", "500", "--random", "500", "--pole", "0.2,0.1"},
        {"verify", "strip_cosh", "--samples", "500", "--random", "500"},
        {"verify", "cone4d", "--samples", "200", "--random", "300"},
        {"verify", "exterior_ball", "--n", "3", "--R", "2", "--samples", "200", "--random", "300"},
        {"verify", "elliptic", "--k", "0.7", "--samples", "200", "--random", "200", "--grid", "20"},
        {"elliptic", "--k", "0.3", "--theta", "0.5", "--trace"},
        {"quadrature", "strip_cosh", "--pole", "0,10"},
        {"quadrature", "sphere", "--n", "4"},
        {"pseudocircle", "--level", "6", "--radii", "32", "--angles", "128"},
        {"boundary", "strip_cosh", "--format", "csv"},
    };
    const char* saved = std::getenv("EXDOM_THREADS");
    const std::string saved_value = saved ? saved : "";
    auto once = [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return std::to_string(code) + "\n" + out.str();
    };
    for (const auto& args : suites) {
        std::string label;
        for (const auto& a : args) label += (label.empty() ? "" : " ") + a;
        if (saved) setenv("EXDOM_THREADS", saved_value.c_str(), 1); else unsetenv("EXDOM_THREADS");
        const std::string a = once(args), b = once(args);
        setenv("EXDOM_THREADS", "1", 1);
        const std::string c = once(args);
        setenv("EXDOM_THREADS", "4", 1);
        const std::string d = once(args);
        o.expect(label, a == b && a == c && a == d,
                 std::to_string(a.size()) + " bytes; repeat " + (a == b ? "same" : "differs") + ", EXDOM_THREADS=1 " +
                     (a == c ? "same" : "differs") + ", EXDOM_THREADS=4 " + (a == d ? "same" : "differs"));
    }
    if (saved) setenv("EXDOM_THREADS", saved_value.c_str(), 1); else unsetenv("EXDOM_THREADS");
    return o;
}

const char* const kTitles[] = {"",
                               "catalog certification",
                               "elliptic family",
                               "conformal factorization",
                               "Schwarz relation",
                               "null quadrature",
                               "growth bounds",
                               "axisymmetric suite",
                               "single layer",
                               "pseudocircle",
                               "determinism"};

bool run_criterion(int n) {
    static const std::function<Outcome()> fns[] = {nullptr,     criterion1, criterion2, criterion3,
                                                   criterion4,  criterion5, criterion6, criterion7,
                                                   criterion8,  criterion9, criterion10};
    Outcome o;
    try {
        o = fns[n]();
    } catch (const std::exception& e) {
        o.expect("unexpected exception", false, e.what());
    }
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " " << kTitles[n] << "\n";
    for (const auto& l : o.lines) std::cout << "  " << l << "\n";
    std::cout.flush();
    return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int criterion = 0;
    app.add_option("--criterion", criterion, "criterion 1..10 (default: all)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);
    bool ok = true;
    if (criterion) {
        ok = run_criterion(criterion);
    } else {
        for (int n = 1; n <= 10; ++n) ok = run_criterion(n) && ok;
    }
    return ok ? 0 : 1;
}

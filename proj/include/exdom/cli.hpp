#pragma once

// Command-line front end. run() returns 0 when every requested check passes,
// 1 when a check misses its tolerance or the computation fails, 2 on usage
// errors.

#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "exdom/catalog.hpp"
#include "exdom/pseudocircle.hpp"
#include "exdom/verify.hpp"

namespace exdom::cli {

struct CliConfig {
    std::string command;
    std::string domain_id;
    std::map<std::string, double> params;
    std::size_t samples = 1000;
    double truncation = 10.0;
    std::vector<std::string> tol;
    std::string format = "json";
    std::string out;
};

namespace detail {

inline Tolerances parse_tolerances(const std::vector<std::string>& items) {
    Tolerances t;
    for (const auto& s : items) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw usage_error("--tol expects name=value, got '" + s + "'");
        double v = 0.0;
        try {
            std::size_t used = 0;
            v = std::stod(s.substr(eq + 1), &used);
            if (used != s.size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw usage_error("--tol: bad value in '" + s + "'");
        }
        t.set(s.substr(0, eq), v);
    }
    return t;
}

inline cplx parse_point(const std::string& s) {
    const auto c = s.find(',');
    if (c == std::string::npos) throw usage_error("expected a point as x,y, got '" + s + "'");
    try {
        return {std::stod(s.substr(0, c)), std::stod(s.substr(c + 1))};
    } catch (const std::exception&) {
        throw usage_error("expected a point as x,y, got '" + s + "'");
    }
}

inline void list_catalog(std::ostream& os) {
    os << "available domains:";
    for (const auto& n : catalog_names()) os << " " << n;
    os << "\n";
}

inline RoofDomain build_domain(const CliConfig& c) {
    bool known = false;
    for (const auto& n : catalog_names()) known = known || n == c.domain_id;
    if (!known) throw usage_error("unknown domain '" + c.domain_id + "'");
    try {
        return make_domain(c.domain_id, c.params);
    } catch (const usage_error&) {
        throw;
    } catch (const error& e) {
        // invalid parameters are a usage problem, not a failed check
        throw usage_error(e.what());
    }
}

inline std::string reports_csv(const std::vector<ResidualReport>& checks) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "name,samples,max_residual,mean_residual,worst_x,worst_y,tolerance,pass\n";
    for (const auto& r : checks) {
        os << r.check_name << ',' << r.samples << ',' << r.max_residual << ',' << r.mean_residual << ','
           << r.worst_location.real() << ',' << r.worst_location.imag() << ',' << r.tolerance << ','
           << (r.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

inline void emit(const CliConfig& c, const std::string& text, std::ostream& out) {
    if (c.out.empty() || c.out == "-") {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw usage_error("cannot open '" + c.out + "' for writing");
    f << text;
}

inline std::string report_text(const CliConfig& c, const Report& r) {
    if (c.format == "csv") return reports_csv(r.checks);
    return to_json(r).dump(2) + "\n";
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Numerical checks for exceptional domains", "exdom"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::optional<double> R, k, theta, n;
    auto add_params = [&](CLI::App* s, bool ball_only = false) {
        s->add_option("--R", R, "radius");
        s->add_option("--n", n, "ambient dimension");
        if (!ball_only) {
            s->add_option("--k", k, "elliptic modulus");
            s->add_option("--theta", theta, "elliptic phase");
        }
    };
    auto add_output = [&](CLI::App* s) {
        s->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--out", cfg.out, "output path (default stdout)");
    };

    auto* cat = app.add_subcommand("catalog", "list catalog domains and default parameters");

    GridSpec grid;
    std::string pole_str;
    int m = 2;
    std::size_t chart_samples = 400;
    auto* ver = app.add_subcommand("verify", "run every check that applies to a domain");
    ver->add_option("domain", cfg.domain_id, "catalog domain")->required();
    add_params(ver);
    ver->add_option("--samples", cfg.samples, "boundary samples per arc");
    ver->add_option("--truncation", cfg.truncation, "parameter cutoff on unbounded arcs");
    ver->add_option("--grid", grid.grid, "interior grid size per axis");
    ver->add_option("--random", grid.random, "random interior points");
    ver->add_option("--seed", grid.seed, "seed for random interior points");
    ver->add_option("--chart-samples", chart_samples, "disk/chart samples");
    ver->add_option("--pole", pole_str, "null-quadrature pole x,y");
    ver->add_option("--m", m, "null-quadrature order");
    ver->add_option("--tol", cfg.tol, "tolerance override name=value");
    add_output(ver);

    auto* bnd = app.add_subcommand("boundary", "export boundary samples");
    bnd->add_option("domain", cfg.domain_id, "catalog domain")->required();
    add_params(bnd);
    bnd->add_option("--samples", cfg.samples, "samples per arc");
    bnd->add_option("--truncation", cfg.truncation, "parameter cutoff on unbounded arcs");
    add_output(bnd);

    double ydist = 2.0;
    std::size_t order = 32;
    double q_trunc = 20.0;
    auto* quad = app.add_subcommand("quadrature", "null-quadrature identity, or the sphere single layer");
    quad->add_option("domain", cfg.domain_id, "catalog domain or 'sphere'")->required();
    add_params(quad);
    quad->add_option("--pole", pole_str, "pole x,y");
    quad->add_option("--m", m, "pole order");
    quad->add_option("--truncation", q_trunc, "arc parameter cutoff");
    quad->add_option("--y", ydist, "sphere: distance of the evaluation point");
    quad->add_option("--order", order, "sphere: quadrature order");
    quad->add_option("--tol", cfg.tol, "tolerance override name=value");
    add_output(quad);

    double ek = 0.5, eth = 0.0;
    bool trace = false;
    std::size_t e_samples = 500;
    auto* ell = app.add_subcommand("elliptic", "elliptic family: traced boundary and its checks");
    ell->add_option("--k", ek, "modulus in (0, 1)");
    ell->add_option("--theta", eth, "phase with cos(theta) > 0");
    ell->add_option("--samples", e_samples, "boundary samples per arc");
    ell->add_option("--truncation", cfg.truncation, "cutoff in Im f on the arcs");
    ell->add_option("--chart-samples", chart_samples, "ODE samples");
    ell->add_flag("--trace", trace, "include the gamma polylines");
    ell->add_option("--tol", cfg.tol, "tolerance override name=value");
    add_output(ell);

    int level = 6;
    double mass = -1.0, margin = 0.05, r_max = 0.995;
    std::optional<double> a_fixed;
    std::size_t radii = 64, angles = 256;
    auto* pc = app.add_subcommand("pseudocircle", "Nehari test of the atomic pseudocircle map");
    pc->add_option("--level", level, "Cantor generation 0..12");
    pc->add_option("--mass", mass, "total mass (negative)");
    pc->add_option("--margin", margin, "search target 2 (1 - margin)");
    pc->add_option("--a", a_fixed, "fixed coupling; skips the search");
    pc->add_option("--r-max", r_max, "outer grid radius");
    pc->add_option("--radii", radii, "grid radii");
    pc->add_option("--angles", angles, "grid angles");
    pc->add_option("--out", cfg.out, "output path (default stdout)");

    std::vector<std::string> argv_store{"exdom"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "exdom: " << e.what() << "\n";
        return 2;
    }

    if (R) cfg.params["R"] = *R;
    if (n) cfg.params["n"] = *n;
    if (k) cfg.params["k"] = *k;
    if (theta) cfg.params["theta"] = *theta;

    try {
        const Tolerances tol = detail::parse_tolerances(cfg.tol);

        if (cat->parsed()) {
            cfg.command = "catalog";
            nlohmann::ordered_json j;
            j["domains"] = nlohmann::ordered_json::array();
            for (const auto& name : catalog_names()) {
                nlohmann::ordered_json e;
                e["name"] = name;
                e["params"] = nlohmann::ordered_json::object();
                for (const auto& [key, v] : catalog_defaults(name)) e["params"][key] = v;
                j["domains"].push_back(e);
            }
            out << j.dump(2) << "\n";
            return 0;
        }

        if (ver->parsed()) {
            cfg.command = "verify";
            const RoofDomain d = detail::build_domain(cfg);
            VerifyOptions o;
            o.samples = cfg.samples;
            o.truncation = cfg.truncation;
            o.grid = grid;
            o.chart_samples = chart_samples;
            o.tol = tol;
            o.m = m;
            if (!pole_str.empty()) o.pole = detail::parse_point(pole_str);
            const Report r = verify_domain(d, o);
            detail::emit(cfg, detail::report_text(cfg, r), out);
            return r.pass() ? 0 : 1;
        }

        if (bnd->parsed()) {
            cfg.command = "boundary";
            const RoofDomain d = detail::build_domain(cfg);
            if (d.boundary.empty()) throw usage_error("domain '" + d.name + "' has no boundary arcs");
            std::ostringstream os;
            if (cfg.format == "csv") {
                write_boundary_csv(os, d, cfg.samples, cfg.truncation);
            } else {
                nlohmann::ordered_json j;
                j["domain"] = d.name;
                j["params"] = nlohmann::ordered_json::object();
                for (const auto& [key, v] : d.params) j["params"][key] = v;
                j["arcs"] = nlohmann::ordered_json::array();
                for (const auto& arc : d.boundary) {
                    nlohmann::ordered_json a;
                    a["name"] = arc.name;
                    a["points"] = nlohmann::ordered_json::array();
                    for (double t : arc_parameters(arc, cfg.samples, cfg.truncation)) {
                        const cplx z = arc.position(t);
                        a["points"].push_back({t, z.real(), z.imag()});
                    }
                    j["arcs"].push_back(a);
                }
                os << j.dump(2) << "\n";
            }
            detail::emit(cfg, os.str(), out);
            return 0;
        }

        if (quad->parsed()) {
            cfg.command = "quadrature";
            Report r;
            if (cfg.domain_id == "sphere") {
                for (const auto& [key, v] : cfg.params) {
                    if (key != "n" && key != "R") throw usage_error("sphere takes --n and --R only");
                }
                const double nn = n.value_or(3.0), RR = R.value_or(1.0);
                if (nn != 3.0 && nn != 4.0) throw usage_error("sphere: n must be 3 or 4");
                r.domain = "sphere";
                r.params = {{"n", nn}, {"R", RR}, {"y", ydist}, {"order", static_cast<double>(order)}};
                r.checks.push_back(single_layer_check(static_cast<int>(nn), RR, ydist, order, tol));
            } else {
                if (pole_str.empty()) throw usage_error("quadrature: --pole is required");
                const RoofDomain d = detail::build_domain(cfg);
                r.domain = d.name;
                r.params = d.params;
                r.checks.push_back(null_quadrature(d, detail::parse_point(pole_str), m, q_trunc, tol));
            }
            detail::emit(cfg, detail::report_text(cfg, r), out);
            return r.pass() ? 0 : 1;
        }

        if (ell->parsed()) {
            cfg.command = "elliptic";
            std::optional<EllipticFamily> E;
            try {
                E.emplace(EllipticParams(ek, eth));
            } catch (const usage_error&) {
                throw;
            } catch (const error& e) {
                throw usage_error(e.what());
            }
            const RoofDomain d = E->domain();
            Report r;
            r.domain = d.name;
            r.params = d.params;
            for (auto& c : boundary_report(d, e_samples, cfg.truncation, tol)) r.checks.push_back(std::move(c));
            r.checks.push_back(ode_residual(d, chart_samples, tol));
            for (auto& c : elliptic_trace_report(*E, tol)) r.checks.push_back(std::move(c));
            std::string text;
            if (cfg.format == "csv") {
                text = detail::reports_csv(r.checks);
            } else {
                auto j = to_json(r);
                if (trace) {
                    j["gamma"] = nlohmann::ordered_json::array();
                    for (std::size_t a = 0; a < E->arcs().size(); ++a) {
                        nlohmann::ordered_json g;
                        g["name"] = d.boundary[a].name;
                        g["w"] = nlohmann::ordered_json::array();
                        g["z"] = nlohmann::ordered_json::array();
                        for (const cplx w : E->arcs()[a].w) {
                            const cplx z = E->z(w);
                            g["w"].push_back({w.real(), w.imag()});
                            g["z"].push_back({z.real(), z.imag()});
                        }
                        j["gamma"].push_back(g);
                    }
                }
                text = j.dump(2) + "\n";
            }
            detail::emit(cfg, text, out);
            return r.pass() ? 0 : 1;
        }

        if (pc->parsed()) {
            cfg.command = "pseudocircle";
            const AtomicMeasure mu = symmetrize(cantor_measure(level, mass));
            PseudoMapState s{mu, 0.0, radii, angles};
            double target = 2.0;
            if (a_fixed) {
                s.a = *a_fixed;
            } else {
                const auto cs = search_coupling(mu, r_max, radii, angles, margin);
                s.a = cs.a;
                target = 2.0 * (1.0 - margin);
            }
            const double sup = nehari_sup(s, r_max);
            const double res = residue_check(s);
            const bool pass = sup <= target && res <= 1e-12;
            auto j = pseudocircle_json(s, sup, res, pass);
            j["tolerances"] = {{"nehari_sup", target}, {"residue", 1e-12}};
            detail::emit(cfg, j.dump(2) + "\n", out);
            return pass ? 0 : 1;
        }
    } catch (const usage_error& e) {
        err << "exdom: " << e.what() << "\n";
        if (std::string(e.what()).rfind("unknown domain", 0) == 0) detail::list_catalog(err);
        return 2;
    } catch (const error& e) {
        err << "exdom: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace exdom::cli

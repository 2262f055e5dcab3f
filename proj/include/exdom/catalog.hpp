#pragma once

// Lookup of catalog domains by name with numeric parameters.

#include <map>
#include <string>
#include <vector>

#include "exdom/domains.hpp"
#include "exdom/elliptic_domain.hpp"

namespace exdom {

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {"halfplane", "exterior_disk", "strip_cosh",
                                                   "elliptic",  "cone4d",        "exterior_ball"};
    return names;
}

/// Default parameters per catalog entry.
inline std::map<std::string, double> catalog_defaults(const std::string& name) {
    if (name == "exterior_disk") return {{"R", 1.0}};
    if (name == "elliptic") return {{"k", 0.5}, {"theta", 0.0}};
    if (name == "exterior_ball") return {{"n", 4.0}, {"R", 1.0}};
    return {};
}

/// Builds a catalog domain. Unknown names and unknown parameter keys are
/// usage errors.
inline RoofDomain make_domain(const std::string& name, const std::map<std::string, double>& params = {}) {
    auto p = catalog_defaults(name);
    bool known = false;
    for (const auto& n : catalog_names()) known = known || n == name;
    if (!known) throw usage_error("unknown domain '" + name + "'");
    for (const auto& [key, value] : params) {
        if (!p.count(key)) throw usage_error("domain '" + name + "' takes no parameter '" + key + "'");
        p[key] = value;
    }
    if (name == "halfplane") return halfplane();
    if (name == "exterior_disk") return exterior_disk(p["R"]);
    if (name == "strip_cosh") return strip_cosh();
    if (name == "elliptic") return elliptic_family(EllipticParams(p["k"], p["theta"]));
    if (name == "cone4d") return cone4d();
    const double n = p["n"];
    if (n != 3.0 && n != 4.0) throw usage_error("exterior_ball: n must be 3 or 4");
    return exterior_ball(static_cast<int>(n), p["R"]);
}

}  // namespace exdom

#include "duct/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "duct/error.hpp"

namespace duct {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw domain_error(path + ": " + what);
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "must be finite");
    return v;
}

double number_or(const json& j, const char* key, double dflt, const std::string& path) {
    return j.contains(key) ? number(j.at(key), path + "." + key) : dflt;
}

int integer_or(const json& j, const char* key, int dflt, const std::string& path) {
    if (!j.contains(key)) return dflt;
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

std::vector<std::pair<int, double>> series(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected a list of [k, coefficient] pairs");
    std::vector<std::pair<int, double>> terms;
    for (size_t i = 0; i < j.size(); ++i) {
        const json& t = j[i];
        std::string p = path + "[" + std::to_string(i) + "]";
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer()) fail(p, "expected [k, coefficient]");
        int k = t[0].get<int>();
        if (k < 0) fail(p, "mode index must be nonnegative");
        terms.emplace_back(k, number(t[1], p));
    }
    return terms;
}

std::vector<double> numbers(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty list of numbers");
    std::vector<double> v;
    for (size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

MassProfile parse_profile(const json& j, const std::string& path) {
    if (j.is_number()) return MassProfile::constant(number(j, path));
    if (!j.is_object() || j.size() != 1) fail(path, "expected a number or one of constant, polynomial, sampled");
    if (j.contains("constant")) return MassProfile::constant(number(j.at("constant"), path + ".constant"));
    if (j.contains("polynomial")) return MassProfile::polynomial(numbers(j.at("polynomial"), path + ".polynomial"));
    if (j.contains("sampled")) {
        const json& s = j.at("sampled");
        std::string p = path + ".sampled";
        if (!s.contains("values") || !s.contains("x_max")) fail(p, "needs values and x_max");
        auto vals = numbers(s.at("values"), p + ".values");
        if (vals.size() < 4) fail(p + ".values", "need at least 4 samples");
        double xm = number(s.at("x_max"), p + ".x_max");
        if (xm <= 0) fail(p + ".x_max", "must be positive");
        return MassProfile::sampled(vals, xm);
    }
    fail(path, "unknown profile kind");
}

MassField parse_field(const json& j, const std::string& path) {
    MassField f;
    if (!j.is_array()) fail(path, "expected a list of {k, poly} entries");
    for (size_t i = 0; i < j.size(); ++i) {
        std::string p = path + "[" + std::to_string(i) + "]";
        if (!j[i].contains("k") || !j[i].contains("poly")) fail(p, "needs k and poly");
        if (!j[i].at("k").is_number_integer()) fail(p + ".k", "expected an integer");
        f.modes.push_back(j[i].at("k").get<int>());
        f.polys.push_back(numbers(j[i].at("poly"), p + ".poly"));
    }
    try {
        f.check_symmetry();
    } catch (const Error& e) {
        fail(path, e.what());
    }
    return f;
}

}  // namespace

double SolverConfig::resolved_length() const {
    double ls = critical_length(inlet, gas, M_min);
    double l = length ? *length : fraction_of_critical * ls;
    if (!(l > 0)) throw domain_error("duct.length: must be positive");
    if (l >= ls) throw domain_error("duct.length: must be below the critical length " + std::to_string(ls));
    return l;
}

SolverConfig parse_config(const json& j) {
    if (!j.is_object()) fail("config", "expected an object");
    SolverConfig c;
    for (auto& [key, _] : j.items())
        if (key != "gas" && key != "mass" && key != "duct" && key != "inlet" && key != "outlet" && key != "solver" &&
            key != "scan")
            fail(key, "unknown section");

    if (j.contains("gas")) c.gas.gamma = number_or(j.at("gas"), "gamma", 1.4, "gas");
    if (!(c.gas.gamma > 1.0)) fail("gas.gamma", "must exceed 1");

    if (!j.contains("mass")) fail("mass", "missing section");
    const json& m = j.at("mass");
    if (!m.contains("lambda")) fail("mass.lambda", "missing");
    c.gas.lambda = number(m.at("lambda"), "mass.lambda");
    if (m.contains("profile")) c.gas.mass = parse_profile(m.at("profile"), "mass.profile");
    if (!(c.gas.mass.value(0.0) > 0.0)) fail("mass.profile", "must be positive");
    if (m.contains("field")) c.gas.mass_field = parse_field(m.at("field"), "mass.field");

    if (!j.contains("inlet")) fail("inlet", "missing section");
    const json& in = j.at("inlet");
    bool hasM = in.contains("M0"), hasA = in.contains("A0");
    if (hasM == hasA) fail("inlet", "give exactly one of M0 or A0");
    if (hasM) {
        double M0 = number(in.at("M0"), "inlet.M0");
        if (!(M0 > 0 && M0 < 1)) fail("inlet.M0", "must lie in (0, 1)");
        c.inlet.M0 = M0;
    } else {
        c.inlet.A0 = number(in.at("A0"), "inlet.A0");
        if (!(*c.inlet.A0 > 0)) fail("inlet.A0", "must be positive");
    }
    c.inlet.p0 = number_or(in, "p0", 1.0, "inlet");
    if (!(c.inlet.p0 > 0)) fail("inlet.p0", "must be positive");
    if (!in.contains("E0")) fail("inlet.E0", "missing");
    c.inlet.E0 = number(in.at("E0"), "inlet.E0");
    try {
        resolve_inlet(c.inlet, c.gas.gamma);
    } catch (const Error& e) {
        fail("inlet", e.what());
    }

    double eps = 1.0;
    if (in.contains("perturbation")) {
        const json& pt = in.at("perturbation");
        std::string p = "inlet.perturbation";
        eps = number_or(pt, "epsilon", 1.0, p);
        if (pt.contains("E0")) c.boundary.E0.terms = series(pt.at("E0"), p + ".E0");
        if (pt.contains("A0")) c.boundary.A0.terms = series(pt.at("A0"), p + ".A0");
        if (pt.contains("v0")) {
            const json& v = pt.at("v0");
            if (!v.is_object()) fail(p + ".v0", "expected {sin: [...]}");
            if (v.contains("sin")) c.boundary.v0.terms = series(v.at("sin"), p + ".v0.sin");
            if (v.contains("cos")) {
                auto cs = series(v.at("cos"), p + ".v0.cos");
                for (auto& [k, a] : cs)
                    if (a != 0.0) fail(p + ".v0.cos", "symmetry violated: v0 must vanish at the walls");
            }
        }
    }
    if (j.contains("outlet")) {
        const json& o = j.at("outlet");
        if (o.contains("p_l")) c.boundary.pl.terms = series(o.at("p_l"), "outlet.p_l");
    }
    c.boundary = c.boundary.scaled(eps);

    if (j.contains("solver")) {
        const json& s = j.at("solver");
        std::string p = "solver";
        c.solver.n_modes = integer_or(s, "n_modes", c.solver.n_modes, p);
        c.n_x = integer_or(s, "n_x", c.n_x, p);
        c.n_y = integer_or(s, "n_y", c.n_y, p);
        c.solver.tol = number_or(s, "tol", c.solver.tol, p);
        c.solver.max_iter = integer_or(s, "max_iter", c.solver.max_iter, p);
        c.solver.h0_gate = number_or(s, "h0_gate", c.solver.h0_gate, p);
        c.M_min = number_or(s, "M_min", c.M_min, p);
        if (s.contains("seminorm_range")) {
            if (!s.at("seminorm_range").is_string()) fail("solver.seminorm_range", "expected a string");
            std::string r = s.at("seminorm_range").get<std::string>();
            if (r == "up_to_k")
                c.seminorm_range = SeminormRange::up_to_k;
            else if (r == "exactly_k")
                c.seminorm_range = SeminormRange::exactly_k;
            else
                fail("solver.seminorm_range", "expected up_to_k or exactly_k");
        }
    }
    if (c.n_x < 5 || c.n_y < 5) fail("solver", "n_x and n_y must be at least 5");
    if (c.solver.n_modes < 0 || c.solver.n_modes >= c.n_y - 1) fail("solver.n_modes", "must lie in [0, n_y - 1)");
    if (!(c.solver.tol > 0)) fail("solver.tol", "must be positive");
    if (c.solver.max_iter < 1) fail("solver.max_iter", "must be at least 1");
    if (!(c.solver.h0_gate > 0)) fail("solver.h0_gate", "must be positive");
    if (!(c.M_min > 0 && c.M_min < 1)) fail("solver.M_min", "must lie in (0, 1)");

    if (j.contains("scan")) {
        const json& s = j.at("scan");
        c.scan.m_max = integer_or(s, "m_max", c.scan.m_max, "scan");
        c.scan.lambda_min = number_or(s, "lambda_min", c.scan.lambda_min, "scan");
        c.scan.lambda_max = number_or(s, "lambda_max", c.scan.lambda_max, "scan");
        c.scan.steps = integer_or(s, "steps", c.scan.steps, "scan");
        if (c.scan.m_max < 0 || c.scan.steps < 2 || !(c.scan.lambda_max > c.scan.lambda_min))
            fail("scan", "needs m_max >= 0, steps >= 2 and lambda_min < lambda_max");
    }

    if (j.contains("duct")) {
        const json& d = j.at("duct");
        bool hasL = d.contains("length"), hasF = d.contains("fraction_of_critical");
        if (hasL && hasF) fail("duct", "give either length or fraction_of_critical");
        if (hasL) c.length = number(d.at("length"), "duct.length");
        if (hasF) {
            c.fraction_of_critical = number(d.at("fraction_of_critical"), "duct.fraction_of_critical");
            if (!(c.fraction_of_critical > 0 && c.fraction_of_critical < 1))
                fail("duct.fraction_of_critical", "must lie in (0, 1)");
        }
    }
    double l = c.resolved_length();
    try {
        c.gas.validate(l);
    } catch (const Error& e) {
        fail("mass", e.what());
    }
    return c;
}

SolverConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw domain_error(path + ": cannot open config");
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw domain_error(path + ": " + e.what());
    }
    return parse_config(j);
}

}  // namespace duct

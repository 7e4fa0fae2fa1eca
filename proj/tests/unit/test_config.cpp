#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "duct/config.hpp"

using namespace duct;
using doctest::Approx;
using nlohmann::json;

namespace {

json minimal() {
    return json::parse(R"({
        "gas": {"gamma": 1.4},
        "mass": {"lambda": 1.0, "profile": 1.0},
        "inlet": {"M0": 0.5, "p0": 1.0, "E0": 10.5},
        "duct": {"fraction_of_critical": 0.5}
    })");
}

std::string error_of(const json& j) {
    try {
        parse_config(j);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::validation);
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("minimal config") {
    auto c = parse_config(minimal());
    CHECK(c.gas.gamma == 1.4);
    CHECK(c.gas.lambda == 1.0);
    CHECK(*c.inlet.M0 == 0.5);
    CHECK(c.fraction_of_critical == 0.5);
    CHECK(c.resolved_length() == Approx(0.5 * 0.418816).epsilon(1e-5));
    CHECK(c.boundary.E0.terms.empty());
    CHECK(c.n_x == 81);
    CHECK(c.seminorm_range == SeminormRange::up_to_k);
}

TEST_CASE("range and symmetry errors") {
    json j = minimal();
    j["duct"]["fraction_of_critical"] = 1.2;
    CHECK(error_of(j).find("duct.fraction_of_critical") != std::string::npos);

    j = minimal();
    j["inlet"]["perturbation"] = json::parse(R"({"epsilon": 1e-3, "v0": {"cos": [[1, 0.5]]}})");
    CHECK(error_of(j).find("inlet.perturbation.v0.cos") != std::string::npos);

    j = minimal();
    j["duct"] = json::parse(R"({"length": 0.5})");
    CHECK(error_of(j).find("critical") != std::string::npos);

    j = minimal();
    j["inlet"]["A0"] = 1.0;
    CHECK(error_of(j).find("inlet") != std::string::npos);

    j = minimal();
    j["mass"]["profile"] = json::parse(R"({"constant": -1.0})");
    CHECK(!error_of(j).empty());

    j = minimal();
    j["mass"]["field"] = json::parse(R"([{"k": 1, "poly": [0.1]}])");
    CHECK(error_of(j).find("mass") != std::string::npos);

    j = minimal();
    j["solver"] = json::parse(R"({"n_x": "many"})");
    CHECK(error_of(j).find("solver.n_x") != std::string::npos);

    j = minimal();
    j["bogus"] = 1;
    CHECK(error_of(j).find("bogus") != std::string::npos);
}

TEST_CASE("full config") {
    json j = minimal();
    j["mass"]["profile"] = json::parse(R"({"polynomial": [1.0, 0.2]})");
    j["inlet"]["perturbation"] = json::parse(R"({"epsilon": 1e-3, "E0": [[1, 1.0]], "A0": [[2, 0.5]],
        "v0": {"sin": [[1, 0.3]], "cos": [[0, 0.0]]}})");
    j["outlet"] = json::parse(R"({"p_l": [[1, 1.0]]})");
    j["solver"] = json::parse(R"({"n_modes": 16, "n_x": 41, "n_y": 33, "tol": 1e-9, "seminorm_range": "exactly_k"})");
    auto c = parse_config(j);
    CHECK(c.boundary.E0(0.0) == Approx(1e-3));
    CHECK(c.boundary.A0(0.0) == Approx(0.5e-3));
    CHECK(c.boundary.v0.terms.size() == 1);
    CHECK(c.boundary.pl(0.0) == Approx(1e-3));
    CHECK(c.solver.n_modes == 16);
    CHECK(c.solver.tol == 1e-9);
    CHECK(c.seminorm_range == SeminormRange::exactly_k);
    CHECK(c.gas.mass.value(1.0) == Approx(1.2));

    j["solver"]["n_modes"] = 40;
    CHECK(error_of(j).find("solver.n_modes") != std::string::npos);
}

TEST_CASE("config file") {
    const char* path = "test_config_tmp.json";
    {
        std::ofstream f(path);
        f << minimal().dump();
    }
    CHECK(parse_config_file(path).gas.lambda == 1.0);
    {
        std::ofstream f(path);
        f << "{ not json";
    }
    CHECK_THROWS_AS(parse_config_file(path), Error);
    std::remove(path);
    CHECK_THROWS_AS(parse_config_file("does/not/exist.json"), Error);
}

#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "duct/background.hpp"
#include "duct/flow.hpp"
#include "duct/iterate.hpp"
#include "duct/norms.hpp"

namespace duct {

struct ScanSettings {
    int m_max = 16;
    double lambda_min = -1.0;
    double lambda_max = 1.0;
    int steps = 41;
};

struct SolverConfig {
    GasParams gas;
    InletSpec inlet;
    std::optional<double> length;
    double fraction_of_critical = 0.5;
    BoundaryData boundary;
    SolverParams solver;
    int n_x = 81, n_y = 65;
    double M_min = 0.01;
    SeminormRange seminorm_range = SeminormRange::up_to_k;
    ScanSettings scan;

    // Absolute duct length; checks it against the critical length.
    double resolved_length() const;
};

SolverConfig parse_config(const nlohmann::json& j);
SolverConfig parse_config_file(const std::string& path);

}  // namespace duct

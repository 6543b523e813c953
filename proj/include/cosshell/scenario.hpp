#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "cosshell/solver.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cosshell {

/// Symbolic boundary prescription for one edge of the parameter rectangle.
struct EdgeBC {
    enum class Type { clamped, free_edge, dirichlet, traction };
    Type type = Type::free_edge;
    Eigen::Vector3d rotation{0, 0, 0};    // dirichlet: Q* = exp(skew(rotation))
    Eigen::Vector3d translation{0, 0, 0}; // dirichlet: m* = Q* y0 + translation
    Eigen::Vector3d force{0, 0, 0};       // traction per unit length
    Eigen::Vector3d couple{0, 0, 0};
};

/// Parsed scenario file: chart, grid, material, boundary data, loads and
/// solver options. Unknown keys are rejected at parse time.
struct Scenario {
    int version = 1;

    std::string chart_kind = "plate";
    double radius = 1.0;
    Domain domain;
    std::string chart_csv;

    int n_u = 17, n_v = 17;
    MaterialConstants material;
    ShearVariant variant = ShearVariant::harmonic;

    // edge order: u_min, u_max, v_min, v_max
    std::array<EdgeBC, 4> edges;

    Eigen::Vector3d load_force{0, 0, 0};
    Eigen::Vector3d load_couple{0, 0, 0};
    // "uniform", or "edge-bump" for a sin^2 profile vanishing on the boundary
    std::string load_profile = "uniform";
    std::string loads_csv;

    SolveOptions solver;

    std::string out_solution = "solution.csv";
    std::string out_report = "report.json";

    // optional koiter-compare fixture
    std::string koiter_fixture; // reference | plate-bend | plate-bump | smooth-displacement
    std::vector<double> koiter_amplitudes;
    double koiter_bend_radius = 5.0;

    static Scenario from_file(const std::string& path);
    static Scenario from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    std::unique_ptr<Chart> make_chart() const;
    Grid2D make_grid() const;
    BoundaryConditions make_bcs(const Chart& chart, const Grid2D& grid, const FrameField& frames) const;
    LoadSpec make_loads(const Grid2D& grid) const;
};

nlohmann::json report_to_json(const SolveReport& rep);

} // namespace cosshell

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "cosshell/kinematics.hpp"
#include "cosshell/scenario.hpp"

using namespace cosshell;
using nlohmann::json;

namespace {

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(COSSHELL_CLI_PATH) + " " + args + " > cli_out.txt 2> cli_err.txt";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string scenario_path(const std::string& name)
{
    return std::string(COSSHELL_SCENARIO_DIR) + "/" + name;
}

} // namespace

TEST_CASE("cli: fault injection makes validation fail")
{
    CHECK(run_cli("validate --inject energy-cross-sign --only constitutive/form-equivalences") == 1);
    CHECK(slurp("cli_out.txt").find("FAIL") != std::string::npos);
    // without the fault the same suite passes
    CHECK(run_cli("validate --only constitutive/form-equivalences") == 0);
}

TEST_CASE("cli: mu_c = 0 reports the semi-definite suites as skipped")
{
    CHECK(run_cli("validate --mu-c 0 --only constitutive/positive-definiteness") == 0);
    const std::string out = slurp("cli_out.txt");
    CHECK(out.find("SKIP") != std::string::npos);
    CHECK(out.find("semi-definite") != std::string::npos);
}

TEST_CASE("cli: solve the bundled clamped plate")
{
    CHECK(run_cli("solve --scenario " + scenario_path("plate_clamped.json") + " --out cli_solve_out") == 0);
    const json rep = json::parse(slurp("cli_solve_out/report.json"));
    CHECK(rep["converged"].get<bool>());
    CHECK(std::abs(rep["energy"].get<double>()) < 1e-18);
}

TEST_CASE("cli: ill-posed scenario warns and exits with the non-convergence code")
{
    CHECK(run_cli("solve --scenario " + scenario_path("plate_free_illposed.json") + " --out cli_illposed") == 2);
    CHECK(slurp("cli_err.txt").find("ill-posed") != std::string::npos);
}

TEST_CASE("cli: energy of the uniform stretch fixture matches the closed form")
{
    // build the stretched configuration for the bundled scenario
    const Scenario sc = Scenario::from_file(scenario_path("plate_stretch_energy.json"));
    const auto chart = sc.make_chart();
    const Grid2D grid = sc.make_grid();
    MidsurfaceConfiguration c = MidsurfaceConfiguration::reference(*chart, grid);
    const double stretch = 1.01;
    for (auto& m : c.m)
        m *= stretch;
    save_config_csv("cli_stretch_config.csv", c);

    CHECK(run_cli("energy --scenario " + scenario_path("plate_stretch_energy.json") +
                  " --config cli_stretch_config.csv --out cli_energy_out") == 0);
    const json rep = json::parse(slurp("cli_energy_out/energy.json"));
    const double t = stretch - 1.0;
    const auto& m = sc.material;
    const double density =
        m.mu * (3 * m.lambda + 2 * m.mu) / (2 * (m.lambda + 2 * m.mu)) * 4.0 * t * t;
    CHECK(rep["total_energy"].get<double>() == doctest::Approx(m.h * density).epsilon(1e-8));
    CHECK(rep["shear_h"].get<double>() == doctest::Approx(0.0));
    CHECK(rep["curvature_h"].get<double>() == doctest::Approx(0.0));

    // harmonic and arithmetic variants agree when the transverse shear vanishes
    CHECK(run_cli("energy --scenario " + scenario_path("plate_stretch_energy.json") +
                  " --config cli_stretch_config.csv --variant arithmetic --out cli_energy_out2") == 0);
    const json rep2 = json::parse(slurp("cli_energy_out2/energy.json"));
    CHECK(rep2["total_energy"].get<double>() ==
          doctest::Approx(rep["total_energy"].get<double>()).epsilon(1e-14));
}

TEST_CASE("cli: reference configuration has zero energy in every term")
{
    CHECK(run_cli("energy --scenario " + scenario_path("plate_stretch_energy.json") +
                  " --out cli_energy_ref") == 0);
    const json rep = json::parse(slurp("cli_energy_ref/energy.json"));
    CHECK(rep["total_energy"].get<double>() == doctest::Approx(0.0));
    CHECK(rep["membrane_h"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("cli: koiter-compare on the bundled plate fixture")
{
    CHECK(run_cli("koiter-compare --scenario " + scenario_path("koiter_plate.json") + " --out cli_koiter") == 0);
    const json rep = json::parse(slurp("cli_koiter/koiter_compare.json"));
    for (const auto& row : rep["rows"])
        CHECK(std::abs(row["w_correction_bracket"].get<double>()) <=
              1e-13 * std::max(1e-300, row["w_koiter_leading"].get<double>()));
}

TEST_CASE("cli: koiter-compare reference fixture reports zeros")
{
    std::ofstream("cli_koiter_ref.json") << R"({
      "version": 1,
      "chart": {"kind": "sphere-cap", "radius": 1.5, "domain": [[0, 1], [0.7, 1.6]]},
      "grid": {"n_u": 9, "n_v": 9},
      "material": {"mu": 1.0, "lambda": 1.0, "mu_c": 0.0, "L_c": 0.1,
                   "b1": 1.0, "b2": 1.0, "b3": 1.0, "h": 0.02},
      "koiter": {"fixture": "reference", "amplitudes": [1.0]}
    })";
    CHECK(run_cli("koiter-compare --scenario cli_koiter_ref.json --out cli_koiter_ref") == 0);
    const json rep = json::parse(slurp("cli_koiter_ref/koiter_compare.json"));
    const auto& row = rep["rows"][0];
    CHECK(std::abs(row["w_full_reduced"].get<double>()) < 1e-25);
    CHECK(std::abs(row["w_koiter_leading"].get<double>()) < 1e-25);
    CHECK(std::abs(row["w_correction_bracket"].get<double>()) < 1e-25);
}

TEST_CASE("cli: input errors exit with code 3")
{
    CHECK(run_cli("solve --scenario does_not_exist.json") == 3);
    // malformed scenario
    std::ofstream("cli_bad_scenario.json") << "{\"version\": 1, \"nonsense\": true}";
    CHECK(run_cli("solve --scenario cli_bad_scenario.json") == 3);
    // configuration on the wrong grid
    const Scenario sc = Scenario::from_file(scenario_path("plate_stretch_energy.json"));
    const auto chart = sc.make_chart();
    Grid2D wrong = sc.make_grid();
    wrong.nu += 2;
    save_config_csv("cli_wrong_grid.csv", MidsurfaceConfiguration::reference(*chart, wrong));
    CHECK(run_cli("energy --scenario " + scenario_path("plate_stretch_energy.json") +
                  " --config cli_wrong_grid.csv") == 3);
}

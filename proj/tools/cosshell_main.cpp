#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cosshell/koiter.hpp"
#include "cosshell/scenario.hpp"
#include "cosshell/solver.hpp"
#include "cosshell/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cosshell;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitNonConvergence = 2;
constexpr int kExitInputError = 3;

std::string out_path(const std::string& out_dir, const std::string& file)
{
    if (fs::path(file).is_absolute() || out_dir.empty())
        return file;
    fs::create_directories(out_dir);
    return (fs::path(out_dir) / file).string();
}

int cmd_validate(const std::string& scenario_path, std::uint64_t seed, const std::string& inject,
                 double mu_c_override, const std::string& only)
{
    MaterialConstants mat;
    mat.mu = 1.2;
    mat.lambda = 0.8;
    mat.mu_c = 0.7;
    mat.L_c = 0.3;
    mat.b1 = 1.1;
    mat.b2 = 0.9;
    mat.b3 = 1.3;
    mat.h = 0.02;
    if (!scenario_path.empty())
        mat = Scenario::from_file(scenario_path).material;
    if (mu_c_override >= 0.0)
        mat.mu_c = mu_c_override;
    mat.validate();

    if (!inject.empty()) {
        if (inject == "energy-cross-sign")
            fault::flip_energy_cross_term = true;
        else
            throw SchemaError("unknown --inject fixture '" + inject + "'");
    }

    const auto results = run_validation(mat, seed, only);
    if (results.empty()) {
        std::fprintf(stderr, "no checks match filter '%s'\n", only.c_str());
        return kExitInputError;
    }
    size_t width = 0;
    for (const auto& r : results)
        width = std::max(width, r.name.size());
    bool all_ok = true;
    for (const auto& r : results) {
        const char* status = r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL");
        std::printf("[%s] %-*s  %s\n", status, static_cast<int>(width), r.name.c_str(), r.detail.c_str());
        all_ok = all_ok && r.passed;
    }
    std::printf("%zu checks, %s\n", results.size(), all_ok ? "all passed" : "FAILURES present");
    return all_ok ? kExitOk : kExitValidationFailure;
}

int cmd_energy(const std::string& scenario_path, const std::string& config_path,
               const std::string& variant_override, int threads, const std::string& out_dir)
{
    Scenario sc = Scenario::from_file(scenario_path);
    if (!variant_override.empty())
        sc.variant = parse_variant(variant_override);
    if (threads > 0)
        sc.solver.threads = threads;
    const auto chart = sc.make_chart();
    const Grid2D grid = sc.make_grid();
    const FrameField frames = evaluate_frames(*chart, grid);
    ShellProblem prob(*chart, grid, sc.material, sc.variant, sc.make_loads(grid),
                      sc.make_bcs(*chart, grid, frames), sc.solver.threads);
    const MidsurfaceConfiguration config =
        config_path.empty() ? MidsurfaceConfiguration::reference(*chart, grid)
                            : load_config_csv(config_path, grid);

    const WShellTerms t = prob.energy_terms(config);
    const double load_pot = prob.load_potential(config);
    json j;
    j["variant"] = to_string(sc.variant);
    j["elastic_energy"] = t.total();
    j["membrane_h"] = t.h_membrane;
    j["shear_h"] = t.h_shear;
    j["curvature_h"] = t.h_curv;
    j["membrane_h3"] = t.h3_membrane;
    j["shear_h3"] = t.h3_shear;
    j["curvature_h3"] = t.h3_curv;
    j["load_potential"] = load_pot;
    j["total_energy"] = t.total() + load_pot;
    const std::string path = out_path(out_dir, "energy.json");
    std::ofstream(path) << j.dump(2) << "\n";
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_solve(const std::string& scenario_path, const std::string& config_path,
              const std::string& variant_override, int threads, const std::string& out_dir)
{
    Scenario sc = Scenario::from_file(scenario_path);
    if (!variant_override.empty())
        sc.variant = parse_variant(variant_override);
    if (threads > 0)
        sc.solver.threads = threads;
    const auto chart = sc.make_chart();
    const Grid2D grid = sc.make_grid();
    const FrameField frames = evaluate_frames(*chart, grid);
    ShellProblem prob(*chart, grid, sc.material, sc.variant, sc.make_loads(grid),
                      sc.make_bcs(*chart, grid, frames), sc.solver.threads);

    MidsurfaceConfiguration config = config_path.empty()
                                         ? MidsurfaceConfiguration::reference(*chart, grid)
                                         : load_config_csv(config_path, grid);
    const SolveReport rep = prob.solve(config, sc.solver);
    if (rep.ill_posed_warning)
        std::cerr << "warning: " << rep.message << "\n";

    save_config_csv(out_path(out_dir, sc.out_solution), config);
    const json j = report_to_json(rep);
    std::ofstream(out_path(out_dir, sc.out_report)) << j.dump(2) << "\n";
    std::printf("%s: energy %.12e, iterations %d, |grad| %.3e (tol %.3e)\n",
                rep.converged ? "converged" : "NOT converged", rep.energy, rep.iterations, rep.grad_norm,
                rep.tol);
    return rep.converged ? kExitOk : kExitNonConvergence;
}

int cmd_koiter_compare(const std::string& scenario_path, const std::string& out_dir)
{
    Scenario sc = Scenario::from_file(scenario_path);
    if (sc.koiter_fixture.empty())
        throw SchemaError("scenario has no 'koiter' fixture section");
    MaterialConstants mat = sc.material;
    mat.mu_c = 0.0; // the bridge requires a Cauchy material
    const auto chart = sc.make_chart();
    const Grid2D grid = sc.make_grid();

    std::vector<double> amps = sc.koiter_amplitudes;
    if (amps.empty())
        amps = {1e-2};

    auto fixture = [&](double a) -> DeformationJet {
        if (sc.koiter_fixture == "reference")
            return reference_deformation(*chart);
        if (sc.koiter_fixture == "plate-bend")
            return plate_cylinder_bend(sc.koiter_bend_radius / a);
        if (sc.koiter_fixture == "plate-bump")
            return plate_bump(a, chart->domain());
        if (sc.koiter_fixture == "smooth-displacement")
            return chart_smooth_displacement(*chart, a);
        throw SchemaError("unknown koiter fixture '" + sc.koiter_fixture + "'");
    };

    json rows = json::array();
    std::vector<double> log_amp, log_disc, log_ext;
    for (const double a : amps) {
        const auto samples = kl_samples_analytic(*chart, grid, fixture(a));
        const ReductionReport rep = reduction_check(samples, mat);
        json row;
        row["amplitude"] = a;
        row["w_full_reduced"] = rep.w_full_reduced;
        row["w_koiter_leading"] = rep.w_koiter_leading;
        row["w_correction_bracket"] = rep.w_correction_bracket;
        row["discrepancy"] = rep.discrepancy;
        row["neglected_terms"] = rep.neglected;
        row["extensional_full"] = rep.w_extensional_full;
        row["extensional_koiter"] = rep.w_extensional_koiter;
        rows.push_back(row);
        if (a > 0 && rep.discrepancy > 0) {
            log_amp.push_back(std::log(a));
            log_disc.push_back(std::log(rep.discrepancy));
            log_ext.push_back(std::log(std::max(1e-300, std::abs(rep.w_extensional_full - rep.w_extensional_koiter))));
        }
    }

    auto fit_slope = [](const std::vector<double>& x, const std::vector<double>& y) {
        if (x.size() < 2)
            return 0.0;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            sx += x[i];
            sy += y[i];
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        const double n = static_cast<double>(x.size());
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };

    json j;
    j["fixture"] = sc.koiter_fixture;
    j["rows"] = rows;
    if (log_amp.size() >= 2) {
        j["discrepancy_order"] = fit_slope(log_amp, log_disc);
        j["extensional_order"] = fit_slope(log_amp, log_ext);
    }
    const std::string path = out_path(out_dir, "koiter_compare.json");
    std::ofstream(path) << j.dump(2) << "\n";
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Geometrically nonlinear 6-parameter Cosserat shell toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, config_path, variant, out_dir, inject, only;
    std::uint64_t seed = 20240901ULL;
    int threads = 0;
    double mu_c_override = -1.0;

    auto* validate = app.add_subcommand("validate", "run all module invariant suites");
    validate->add_option("--scenario", scenario_path, "take material constants from a scenario file");
    validate->add_option("--seed", seed, "RNG seed for the randomized suites");
    validate->add_option("--mu-c", mu_c_override, "override the Cosserat couple modulus");
    validate->add_option("--inject", inject, "fault-injection fixture (energy-cross-sign)")->group("");
    validate->add_option("--only", only, "run only checks whose name starts with this prefix");

    auto* energy = app.add_subcommand("energy", "evaluate the shell energy of a configuration");
    energy->add_option("--scenario", scenario_path, "scenario file")->required();
    energy->add_option("--config", config_path, "configuration CSV (default: reference)");
    energy->add_option("--variant", variant, "harmonic|arithmetic");
    energy->add_option("--threads", threads, "assembly threads");
    energy->add_option("--out", out_dir, "output directory");

    auto* solve = app.add_subcommand("solve", "minimize the total energy");
    solve->add_option("--scenario", scenario_path, "scenario file")->required();
    solve->add_option("--config", config_path, "warm-start configuration CSV");
    solve->add_option("--variant", variant, "harmonic|arithmetic");
    solve->add_option("--threads", threads, "assembly threads");
    solve->add_option("--out", out_dir, "output directory");

    auto* koiter = app.add_subcommand("koiter-compare", "run the classical-shell reduction comparison");
    koiter->add_option("--scenario", scenario_path, "scenario file")->required();
    koiter->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed())
            return cmd_validate(scenario_path, seed, inject, mu_c_override, only);
        if (energy->parsed())
            return cmd_energy(scenario_path, config_path, variant, threads, out_dir);
        if (solve->parsed())
            return cmd_solve(scenario_path, config_path, variant, threads, out_dir);
        if (koiter->parsed())
            return cmd_koiter_compare(scenario_path, out_dir);
    } catch (const SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

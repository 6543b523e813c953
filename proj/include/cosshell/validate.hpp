#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cosshell/constitutive.hpp"

namespace cosshell {

struct CheckResult {
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
};

/// Runs every module invariant suite with a fixed RNG seed. A non-empty
/// filter restricts the run to checks whose name starts with it.
std::vector<CheckResult> run_validation(const MaterialConstants& mat, std::uint64_t seed,
                                        const std::string& filter = "");

// reusable random generators and oracles

FramePtr random_frame(std::mt19937_64& rng, double curvature_scale = 1.0);
ShellTensor random_shell_tensor(std::mt19937_64& rng, const FramePtr& f, double scale = 1.0);
PlanarTensor random_planar_tensor(std::mt19937_64& rng, const FramePtr& f, double scale = 1.0);

/// Max relative block error of the stress resultants against central
/// finite differences of w_shell (steps scaled per component, floor 1e-8).
double resultants_fd_error(const ShellTensor& e, const ShellTensor& k, const MaterialConstants& m,
                           ShearVariant variant);

double rel_err(double a, double b);

} // namespace cosshell

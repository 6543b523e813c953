#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosshell/constitutive.hpp"
#include "cosshell/kinematics.hpp"

namespace cosshell {

enum class NodeBC { free_node, dirichlet, traction };

/// Mixed boundary data; every boundary node carries exactly one kind.
/// Interior nodes are free_node with no boundary data.
struct BoundaryConditions {
    std::vector<NodeBC> kind;
    std::vector<Eigen::Vector3d> m_star;        // dirichlet positions
    std::vector<Eigen::Quaterniond> q_star;     // dirichlet rotations
    std::vector<Eigen::Vector3d> edge_force;    // traction per unit length
    std::vector<Eigen::Vector3d> edge_couple;
    std::vector<double> line_weight;            // boundary line quadrature

    static BoundaryConditions none(const Grid2D& grid);
    /// All edges clamped to the reference placement.
    static BoundaryConditions clamped_reference(const Chart& chart, const Grid2D& grid);
    bool has_dirichlet() const;
};

/// Dead area loads per node: force f [N/m^2] and couple c [N m/m^2].
struct LoadSpec {
    std::vector<Eigen::Vector3d> force;
    std::vector<Eigen::Vector3d> couple;

    static LoadSpec zero(const Grid2D& grid);
    static LoadSpec uniform(const Grid2D& grid, const Eigen::Vector3d& f, const Eigen::Vector3d& c);
};

struct SolveOptions {
    double tol = -1.0;    // < 0: default 1e-8 * h * mu * area
    int max_iter = 2000;
    int threads = 1;
    int lbfgs_memory = 10;
    bool record_history = true;
};

struct SolveReport {
    double energy = 0.0;
    int iterations = 0;
    bool converged = false;
    bool ill_posed_warning = false;
    double grad_norm = 0.0;
    double tol = 0.0;
    std::vector<double> grad_norm_history;
    std::vector<double> energy_history;
    double residual_force_max = 0.0;  // interior nodes only
    double residual_moment_max = 0.0;
    std::string message;
};

/// Discrete minimization problem for one chart/grid/material/load set.
/// Frames and quadrature weights are evaluated once at construction.
class ShellProblem {
public:
    ShellProblem(const Chart& chart, const Grid2D& grid, const MaterialConstants& mat, ShearVariant variant,
                 LoadSpec loads, BoundaryConditions bcs, int threads = 1);

    const Grid2D& grid() const { return grid_; }
    const FrameField& frames() const { return frames_; }
    const std::vector<double>& weights() const { return weights_; }
    const MaterialConstants& material() const { return mat_; }
    ShearVariant variant() const { return variant_; }

    /// Total energy: elastic + dead-load potential (area loads and
    /// boundary tractions). The couple potential uses the rotation-vector
    /// chart of Q_e, valid for rotations below pi.
    double total_energy(const MidsurfaceConfiguration& config) const;
    WShellTerms energy_terms(const MidsurfaceConfiguration& config) const;
    double load_potential(const MidsurfaceConfiguration& config) const;

    /// Exact gradient of the discrete energy; rotation part in the spatial
    /// tangent (virtual rotation vector). Dirichlet nodes are zeroed.
    void energy_gradient(const MidsurfaceConfiguration& config, std::vector<Eigen::Vector3d>& grad_m,
                         std::vector<Eigen::Vector3d>& grad_w) const;

    /// Interior force/moment residuals of the local equilibrium equations;
    /// boundary nodes are zero. The closure selects how the resultant
    /// fields are evaluated at boundary nodes: solver minimizers balance
    /// the sbp reading, analytically manufactured fields the second-order
    /// one.
    void equilibrium_residual(const MidsurfaceConfiguration& config, std::vector<Eigen::Vector3d>& r_force,
                              std::vector<Eigen::Vector3d>& r_moment,
                              BoundaryClosure closure = BoundaryClosure::sbp) const;

    SolveReport solve(MidsurfaceConfiguration& config, const SolveOptions& opts = {}) const;

    /// Overwrites Dirichlet nodes with their prescribed values.
    void apply_dirichlet(MidsurfaceConfiguration& config) const;

    double reference_area() const;
    bool loads_self_equilibrated() const;

private:
    const Chart& chart_;
    Grid2D grid_;
    FrameField frames_;
    std::vector<double> weights_;
    MaterialConstants mat_;
    ShearVariant variant_;
    LoadSpec loads_;
    BoundaryConditions bcs_;
    int threads_;
    std::vector<Eigen::Vector3d> dead_force_;  // combined area + traction, premultiplied by weights
    std::vector<Eigen::Vector3d> dead_couple_;
};

// Spec-level convenience wrappers (no boundary tractions).
double total_energy(const MidsurfaceConfiguration& config, const Chart& chart, const MaterialConstants& mat,
                    const LoadSpec& loads, ShearVariant variant = ShearVariant::harmonic);
void energy_gradient(const MidsurfaceConfiguration& config, const Chart& chart, const MaterialConstants& mat,
                     const LoadSpec& loads, ShearVariant variant, std::vector<Eigen::Vector3d>& grad_m,
                     std::vector<Eigen::Vector3d>& grad_w);
void equilibrium_residual(const MidsurfaceConfiguration& config, const Chart& chart,
                          const MaterialConstants& mat, const LoadSpec& loads, ShearVariant variant,
                          std::vector<Eigen::Vector3d>& r_force, std::vector<Eigen::Vector3d>& r_moment);
SolveReport solve(const Chart& chart, const Grid2D& grid, const MaterialConstants& mat, ShearVariant variant,
                  const LoadSpec& loads, const BoundaryConditions& bcs, MidsurfaceConfiguration& config,
                  const SolveOptions& opts = {});

} // namespace cosshell

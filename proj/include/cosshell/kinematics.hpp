#pragma once

#include <Eigen/Geometry>
#include <string>
#include <vector>

#include "cosshell/grid.hpp"
#include "cosshell/material.hpp"
#include "cosshell/tensors.hpp"

namespace cosshell {

/// Discrete midsurface fields: deformed position m and elastic
/// microrotation Q_e (unit quaternion) per node.
struct MidsurfaceConfiguration {
    Grid2D grid;
    std::vector<Eigen::Vector3d> m;
    std::vector<Eigen::Quaterniond> q;

    Eigen::Matrix3d rotation(int node) const { return q[node].toRotationMatrix(); }

    /// m = y0, Q_e = identity; zero strains by construction.
    static MidsurfaceConfiguration reference(const Chart& chart, const Grid2D& grid);
};

/// Grad_s f = f,_a (x) a^a for a per-node vector field.
std::vector<ShellTensor> surface_gradient(const Grid2D& grid, const std::vector<Eigen::Vector3d>& field,
                                          const FrameField& frames);

/// Shell strain tensor E = Q_e^T Grad_s m - a, per node.
std::vector<ShellTensor> shell_strain(const MidsurfaceConfiguration& config, const FrameField& frames,
                                      BoundaryClosure closure = BoundaryClosure::second_order);

/// Bending-curvature tensor K = axl(Q_e^T Q_e,_a) (x) a^a, per node.
std::vector<ShellTensor> bending_curvature(const MidsurfaceConfiguration& config, const FrameField& frames,
                                           BoundaryClosure closure = BoundaryClosure::second_order);

/// Same tensor through the director route
/// K = 1/2 [ Q_e^T (d_i x Grad_s d_i) - d_i^0 x Grad_s d_i^0 ];
/// serves as a mutual oracle for the axl route.
std::vector<ShellTensor> bending_curvature_directors(const MidsurfaceConfiguration& config,
                                                     const FrameField& frames,
                                                     BoundaryClosure closure = BoundaryClosure::second_order);

struct KoiterStrains {
    PlanarTensor eps; // change of metric
    PlanarTensor rho; // change of curvature
};

/// Koiter strain measures of the deformed midsurface (symmetrized).
/// Throws DegenerateDeformedSurface when ||m,1 x m,2|| vanishes.
std::vector<KoiterStrains> koiter_strains(const MidsurfaceConfiguration& config, const FrameField& frames);

struct ExpansionVectors {
    Eigen::Vector3d alpha;
    Eigen::Vector3d beta;
};

/// First and second thickness-expansion vectors of the deformation,
/// reconstructed from the midsurface strains.
ExpansionVectors expansion_vectors(const ShellTensor& e, const ShellTensor& k, const SurfaceFrame& frame,
                                   const MaterialConstants& mat, const Eigen::Matrix3d& q_e);

/// CSV interchange, fixed columns idx,u,v,mx,my,mz,qw,qx,qy,qz.
void save_config_csv(const std::string& path, const MidsurfaceConfiguration& config);
MidsurfaceConfiguration load_config_csv(const std::string& path, const Grid2D& grid);

} // namespace cosshell

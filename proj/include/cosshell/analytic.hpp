#pragma once

#include <functional>

#include "cosshell/kinematics.hpp"

namespace cosshell {

/// Closed-form deformed surface given by its 2-jet; used to build
/// Kirchhoff-Love configurations without finite-difference error.
using DeformationJet = std::function<Jet2(double, double)>;

/// Exact per-point kinematics of a KL configuration: the deformed frame
/// {m,1/|..|, n x .., n} is the rotation image of the reference frame, so
/// d3 equals the deformed unit normal by construction.
struct KLPointData {
    FramePtr frame;
    Eigen::Vector3d m;
    Eigen::Matrix3d q;       // elastic microrotation
    ShellTensor e;           // shell strain
    ShellTensor k;           // bending-curvature
    PlanarTensor eps, rho;   // Koiter strains
    Eigen::Vector3d normal;  // deformed unit normal
};

KLPointData analytic_kl_point(const Chart& chart, double u, double v, const DeformationJet& def);

/// Discrete configuration sampled from the analytic KL construction.
MidsurfaceConfiguration sample_kl_config(const Chart& chart, const Grid2D& grid, const DeformationJet& def);

// Bundled deformation families (jets are exact). Families taking a chart
// capture it by reference; the chart must outlive the returned jet.

/// Identity deformation of a chart.
DeformationJet reference_deformation(const Chart& chart);

/// Flat plate bent isometrically onto a cylinder arc of radius r about the
/// v axis: (u,v,0) -> (r sin(u/r), v, r(1 - cos(u/r))).
DeformationJet plate_cylinder_bend(double r);

/// Plate with a smooth transverse bump of amplitude s:
/// (u,v,0) -> (u, v, s sin(pi u) sin(pi v)) on the unit domain scale.
DeformationJet plate_bump(double s, const Domain& dom);

/// Chart displaced by amplitude s along a smooth vector field with
/// trigonometric components; generic curved-shell test family.
DeformationJet chart_smooth_displacement(const Chart& chart, double s);

} // namespace cosshell

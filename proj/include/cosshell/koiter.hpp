#pragma once

#include <vector>

#include "cosshell/analytic.hpp"
#include "cosshell/constitutive.hpp"

namespace cosshell {

/// Material data of the classical Koiter model.
struct KoiterMaterial {
    double mu = 1.0;
    double lambda = 1.0;
    double h = 0.01;

    void validate() const
    {
        if (!(mu > 0.0 && 3.0 * lambda + 2.0 * mu > 0.0 && h > 0.0))
            throw Error("koiter material: need mu > 0, 3 lambda + 2 mu > 0, h > 0");
    }
};

/// Plane-stress quadratic form mu ||sym T||^2 + lam mu/(lam+2mu) (tr T)^2.
/// Throws NotSymmetric when the skew part of T exceeds 1e-10 relative.
double w_koiter_form(const PlanarTensor& t, const KoiterMaterial& m);

/// Areal Koiter energy h W(eps) + h^3/12 W(rho).
double koiter_energy_density(const PlanarTensor& eps, const PlanarTensor& rho, const KoiterMaterial& m);

/// One quadrature sample of a Kirchhoff-Love configuration.
struct ReductionSample {
    ShellTensor e, k;
    PlanarTensor eps, rho;
    double weight = 1.0;
};

/// Area-integrated comparison of the reduced shell energy against the
/// Koiter energy plus its curvature-dependent correction bracket.
struct ReductionReport {
    double w_full_reduced = 0;       // reduced shell energy (mu_c = 0, no curvature energy)
    double w_koiter_leading = 0;     // Koiter leading terms
    double w_correction_bracket = 0; // curvature-coupled correction terms
    double w_extensional_full = 0;   // h-weighted mixt(E) part
    double w_extensional_koiter = 0; // h-weighted Koiter(eps) part
    double discrepancy = 0;          // |full - (koiter + bracket)|
    double neglected = 0;            // |bracket|, the terms dropped in the classical form
};

/// Requires mat.mu_c == 0; curvature energy plays no role in the reduced
/// comparison by construction.
ReductionReport reduction_check(const std::vector<ReductionSample>& samples, const MaterialConstants& mat);

/// Samples from a discrete configuration; throws KLViolated when
/// ||d3 - n|| > tol at any node.
std::vector<ReductionSample> kl_samples_from_config(const MidsurfaceConfiguration& config,
                                                    const FrameField& frames, double tol = 1e-8);

/// Exact samples from an analytic KL deformation.
std::vector<ReductionSample> kl_samples_analytic(const Chart& chart, const Grid2D& grid,
                                                 const DeformationJet& def);

} // namespace cosshell

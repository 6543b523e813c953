#include "cosshell/koiter.hpp"

#include <cmath>

namespace cosshell {

double w_koiter_form(const PlanarTensor& t, const KoiterMaterial& m)
{
    const double skew_norm = std::sqrt(t.skew().norm2());
    if (skew_norm > 1e-10 * std::max(1e-300, std::sqrt(t.norm2())))
        throw NotSymmetric("w_koiter_form: tensor is not symmetric");
    const double tr = t.trace();
    return m.mu * t.sym().norm2() + m.lambda * m.mu / (m.lambda + 2.0 * m.mu) * tr * tr;
}

double koiter_energy_density(const PlanarTensor& eps, const PlanarTensor& rho, const KoiterMaterial& m)
{
    return m.h * w_koiter_form(eps, m) + m.h * m.h * m.h / 12.0 * w_koiter_form(rho, m);
}

namespace {

// planar mixt form with mu_c = 0 material
double mixt_p(const PlanarTensor& s, const PlanarTensor& t, const MaterialConstants& m)
{
    return m.mu * s.sym().ddot(t.sym()) + m.mu_c * s.skew().ddot(t.skew()) +
           m.lambda * m.mu / (m.lambda + 2.0 * m.mu) * s.trace() * t.trace();
}

} // namespace

ReductionReport reduction_check(const std::vector<ReductionSample>& samples, const MaterialConstants& mat)
{
    if (mat.mu_c != 0.0)
        throw Error("reduction_check requires mu_c = 0");
    const KoiterMaterial km{mat.mu, mat.lambda, mat.h};
    const double h = mat.h, t3 = h * h * h / 12.0;

    ReductionReport r;
    for (const auto& s : samples) {
        const FramePtr& f = s.e.frame();
        const double kg = f->gauss_curvature;
        const PlanarTensor b = PlanarTensor::second_fundamental(f);
        const PlanarTensor bstar = PlanarTensor::b_cofactor(f);
        const PlanarTensor ae = s.e.planar();
        const PlanarTensor y = s.e.compose(b).planar() + alternator_apply(s.k).planar();

        // reduced shell energy as a quadratic form of the planar strains
        const double w_full = (h + kg * t3) * mixt_p(ae, ae, mat) + t3 * mixt_p(y, y, mat) -
                              2.0 * t3 * mixt_p(ae, y.compose(bstar), mat);

        // classical leading terms
        const double w_koit = koiter_energy_density(s.eps, s.rho, km);

        // curvature-coupled bracket
        const PlanarTensor epsb = s.eps.compose(b);
        const double bracket =
            t3 * (4.0 * mixt_p(epsb, epsb - s.rho, mat) -
                  mixt_p(s.eps, s.eps * (3.0 * kg) - s.rho.compose(bstar) * 2.0, mat));

        r.w_full_reduced += s.weight * w_full;
        r.w_koiter_leading += s.weight * w_koit;
        r.w_correction_bracket += s.weight * bracket;
        r.w_extensional_full += s.weight * h * mixt_p(ae, ae, mat);
        r.w_extensional_koiter += s.weight * h * w_koiter_form(s.eps, km);
    }
    r.discrepancy = std::abs(r.w_full_reduced - (r.w_koiter_leading + r.w_correction_bracket));
    r.neglected = std::abs(r.w_correction_bracket);
    return r;
}

std::vector<ReductionSample> kl_samples_from_config(const MidsurfaceConfiguration& config,
                                                    const FrameField& frames, double tol)
{
    const auto dm = grid_partials(config.grid, config.m);
    for (int n = 0; n < config.grid.count(); ++n) {
        const Eigen::Vector3d d3 = config.rotation(n) * frames[n]->n0;
        const Eigen::Vector3d cr = dm[0][n].cross(dm[1][n]);
        if (cr.norm() < 1e-12)
            throw DegenerateDeformedSurface("deformed midsurface is not an immersion");
        if ((d3 - cr.normalized()).norm() > tol)
            throw KLViolated("configuration violates d3 = deformed normal at node " + std::to_string(n));
    }
    const auto e = shell_strain(config, frames);
    const auto k = bending_curvature(config, frames);
    const auto ks = koiter_strains(config, frames);
    const auto w = quadrature_weights(config.grid, frames);
    std::vector<ReductionSample> out;
    out.reserve(config.grid.count());
    for (int n = 0; n < config.grid.count(); ++n)
        out.push_back({e[n], k[n], ks[n].eps, ks[n].rho, w[n]});
    return out;
}

std::vector<ReductionSample> kl_samples_analytic(const Chart& chart, const Grid2D& grid,
                                                 const DeformationJet& def)
{
    std::vector<ReductionSample> out;
    out.reserve(grid.count());
    const double cell = grid.du() * grid.dv();
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i) {
            KLPointData p = analytic_kl_point(chart, grid.u(i), grid.v(j), def);
            double w = cell * p.frame->area_density;
            if (i == 0 || i == grid.nu - 1) w *= 0.5;
            if (j == 0 || j == grid.nv - 1) w *= 0.5;
            out.push_back({p.e, p.k, p.eps, p.rho, w});
        }
    return out;
}

} // namespace cosshell

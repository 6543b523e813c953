#pragma once

#include <array>

#include "cosshell/material.hpp"
#include "cosshell/tensors.hpp"

namespace cosshell {

// Quadratic and bilinear energy forms on mixed tensors X = X_{ia} a^i (x) a^a.
// Each form has one production path plus alternative expressions that are
// cross-checked in the validation suite.

/// Mixed bilinear form: mu sym:sym + mu_c skew:skew + lam mu/(lam+2mu) tr tr,
/// transversal parts weighted by (mu+mu_c)/2.
double w_mixt(const ShellTensor& x, const ShellTensor& y, const MaterialConstants& m);
double w_mixt(const ShellTensor& x, const MaterialConstants& m);
/// Alternative route: 3D micropolar density minus the plane-stress trace
/// correction, evaluated on the embedding.
double w_mixt_via_wmp(const ShellTensor& x, const MaterialConstants& m);
/// 3D micropolar quadratic density of an embedded tensor.
double w_mp(const Eigen::Matrix3d& t, const MaterialConstants& m);

/// Cosserat shell bilinear form: mixt with the transversal weight replaced
/// by the harmonic mean 2 mu mu_c/(mu+mu_c).
double w_coss(const ShellTensor& x, const ShellTensor& y, const MaterialConstants& m);
/// Production quadratic (surface-deviator split).
double w_coss(const ShellTensor& x, const MaterialConstants& m);
// alternative routes for the same quadratic
double w_coss_via_wmixt(const ShellTensor& x, const MaterialConstants& m);
double w_coss_sym_form(const ShellTensor& x, const MaterialConstants& m);
double w_coss_via_moduli(const ShellTensor& x, const MaterialConstants& m);

/// Curvature quadratic, production (surface-deviator split).
double w_curv(const ShellTensor& x, const MaterialConstants& m);
double w_curv_sym_form(const ShellTensor& x, const MaterialConstants& m);

/// L_{n0}(X) = X - lam/(lam+2mu) (tr X) n0 (x) n0 - (mu-mu_c)/(mu+mu_c) (n0 X) (x) n0,
/// returned as an ambient 3x3 tensor on the frame.
Eigen::Matrix3d l_n0(const ShellTensor& x, const MaterialConstants& m);

/// 3D moduli applied to an ambient tensor: C:T = 2mu sym T + 2mu_c skew T + lam (tr T) I.
Eigen::Matrix3d apply_C3d(const Eigen::Matrix3d& t, const MaterialConstants& m);
Eigen::Matrix3d apply_G3d(const Eigen::Matrix3d& t, const MaterialConstants& m);
/// Index route through contravariant components C^{ijkl} on the frame metric.
Eigen::Matrix3d apply_C3d_index(const SurfaceFrame& f, const Eigen::Matrix3d& t, const MaterialConstants& m);
Eigen::Matrix3d apply_G3d_index(const SurfaceFrame& f, const Eigen::Matrix3d& t, const MaterialConstants& m);

/// Fourth-order planar shell moduli, contravariant components on the frame.
struct ShellModuli {
    FramePtr frame;
    std::array<double, 16> c_s; // C_S^{abgd}
    std::array<double, 16> g_s; // G_S^{abgd}
    static int idx(int a, int b, int g, int d) { return ((a * 2 + b) * 2 + g) * 2 + d; }
    PlanarTensor apply_cs(const PlanarTensor& t) const;
    PlanarTensor apply_gs(const PlanarTensor& t) const;
};
ShellModuli shell_moduli(const FramePtr& f, const MaterialConstants& m);

// direct/deviator forms of the moduli action, used as cross-checks
PlanarTensor apply_cs_direct(const PlanarTensor& t, const MaterialConstants& m);
PlanarTensor apply_cs_dev(const PlanarTensor& t, const MaterialConstants& m);
PlanarTensor apply_gs_direct(const PlanarTensor& t, const MaterialConstants& m);
PlanarTensor apply_gs_dev(const PlanarTensor& t, const MaterialConstants& m);

/// Per-term breakdown of the areal strain-energy density.
struct WShellTerms {
    double h_membrane = 0, h_shear = 0, h_curv = 0;
    double h3_membrane = 0, h3_shear = 0, h3_curv = 0;
    double total() const { return h_membrane + h_shear + h_curv + h3_membrane + h3_shear + h3_curv; }
};

/// Areal strain-energy density W_shell(E, K); production path.
double w_shell(const ShellTensor& e, const ShellTensor& k, const MaterialConstants& m,
               ShearVariant variant = ShearVariant::harmonic);
WShellTerms w_shell_terms(const ShellTensor& e, const ShellTensor& k, const MaterialConstants& m,
                          ShearVariant variant = ShearVariant::harmonic);
/// Alternative route, assembled from the planar mixt form plus explicit
/// transverse-shear terms.
double w_shell_alt(const ShellTensor& e, const ShellTensor& k, const MaterialConstants& m,
                   ShearVariant variant = ShearVariant::harmonic);

/// Rotated stress resultants Q^T N, Q^T M (first Piola-Kirchhoff type);
/// partial derivatives of w_shell with respect to E and K.
struct StressResultants {
    ShellTensor n; // Q_e^T N
    ShellTensor m; // Q_e^T M
};
StressResultants stress_resultants(const ShellTensor& e, const ShellTensor& k, const MaterialConstants& m,
                                   ShearVariant variant = ShearVariant::harmonic);

namespace fault {
/// Test fixture: flips the sign of the cross term in the production energy
/// path so the form-equivalence suite must fail. Never set in normal runs.
extern bool flip_energy_cross_term;
} // namespace fault

} // namespace cosshell

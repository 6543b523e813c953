#include "cosshell/constitutive.hpp"

namespace cosshell {

namespace fault {
bool flip_energy_cross_term = false;
} // namespace fault

namespace {

double sym3_norm2(const Eigen::Matrix3d& t)
{
    return 0.25 * (t + t.transpose()).squaredNorm();
}

double skew3_norm2(const Eigen::Matrix3d& t)
{
    return 0.25 * (t - t.transpose()).squaredNorm();
}

// planar mixt bilinear: mu sym:sym + mu_c skew:skew + lam mu/(lam+2mu) tr tr
double mixt_planar(const PlanarTensor& s, const PlanarTensor& t, const MaterialConstants& m)
{
    const double trt = m.lambda * m.mu / (m.lambda + 2.0 * m.mu) * s.trace() * t.trace();
    return m.mu * s.sym().ddot(t.sym()) + m.mu_c * s.skew().ddot(t.skew()) + trt;
}

} // namespace

double w_mixt(const ShellTensor& x, const ShellTensor& y, const MaterialConstants& m)
{
    require_same_frame(x.frame(), y.frame());
    return mixt_planar(x.planar(), y.planar(), m) + 0.5 * (m.mu + m.mu_c) * x.transversal().dot(y.transversal());
}

double w_mixt(const ShellTensor& x, const MaterialConstants& m)
{
    return w_mixt(x, x, m);
}

double w_mp(const Eigen::Matrix3d& t, const MaterialConstants& m)
{
    const double tr = t.trace();
    return m.mu * sym3_norm2(t) + m.mu_c * skew3_norm2(t) + 0.5 * m.lambda * tr * tr;
}

double w_mixt_via_wmp(const ShellTensor& x, const MaterialConstants& m)
{
    const double tr = x.trace();
    return w_mp(x.embed(), m) - 0.5 * m.lambda * m.lambda / (m.lambda + 2.0 * m.mu) * tr * tr;
}

double w_coss(const ShellTensor& x, const ShellTensor& y, const MaterialConstants& m)
{
    require_same_frame(x.frame(), y.frame());
    const double coef = 2.0 * m.mu * m.mu_c / (m.mu + m.mu_c);
    return mixt_planar(x.planar(), y.planar(), m) + coef * x.transversal().dot(y.transversal());
}

double w_coss(const ShellTensor& x, const MaterialConstants& m)
{
    const PlanarTensor p = x.planar();
    const double tr = p.trace();
    const double tr_coef = m.mu * (3.0 * m.lambda + 2.0 * m.mu) / (2.0 * (m.lambda + 2.0 * m.mu));
    return m.mu * p.sym().dev_s().norm2() + m.mu_c * p.skew().norm2() + tr_coef * tr * tr +
           2.0 * m.mu * m.mu_c / (m.mu + m.mu_c) * x.transversal().norm2();
}

double w_coss_via_wmixt(const ShellTensor& x, const MaterialConstants& m)
{
    const double d = m.mu - m.mu_c;
    return w_mixt(x, m) - 0.5 * d * d / (m.mu + m.mu_c) * x.transversal().norm2();
}

double w_coss_sym_form(const ShellTensor& x, const MaterialConstants& m)
{
    const PlanarTensor p = x.planar();
    const double tr = p.trace();
    return m.mu * p.sym().norm2() + m.mu_c * p.skew().norm2() +
           m.lambda * m.mu / (m.lambda + 2.0 * m.mu) * tr * tr +
           2.0 * m.mu * m.mu_c / (m.mu + m.mu_c) * x.transversal().norm2();
}

double w_coss_via_moduli(const ShellTensor& x, const MaterialConstants& m)
{
    const ShellModuli mod = shell_moduli(x.frame(), m);
    const PlanarTensor p = x.planar();
    return 0.5 * p.ddot(mod.apply_cs(p)) + 2.0 * m.mu * m.mu_c / (m.mu + m.mu_c) * x.transversal().norm2();
}

double w_curv(const ShellTensor& x, const MaterialConstants& m)
{
    const PlanarTensor p = x.planar();
    const double tr = p.trace();
    const double s = m.mu * m.L_c * m.L_c;
    return s * (m.b1 * p.sym().dev_s().norm2() + m.b2 * p.skew().norm2() +
                (m.b3 + m.b1 / 6.0) * tr * tr + 0.5 * (m.b1 + m.b2) * x.transversal().norm2());
}

double w_curv_sym_form(const ShellTensor& x, const MaterialConstants& m)
{
    const PlanarTensor p = x.planar();
    const double tr = p.trace();
    const double s = m.mu * m.L_c * m.L_c;
    return s * (m.b1 * p.sym().norm2() + m.b2 * p.skew().norm2() +
                (m.b3 - m.b1 / 3.0) * tr * tr + 0.5 * (m.b1 + m.b2) * x.transversal().norm2());
}

Eigen::Matrix3d l_n0(const ShellTensor& x, const MaterialConstants& m)
{
    const Eigen::Vector3d n0 = x.frame()->n0;
    const Eigen::Matrix3d xe = x.embed();
    const Eigen::Vector3d nx = x.transversal().embed(); // n0 X, tangent vector
    return xe - m.lambda / (m.lambda + 2.0 * m.mu) * x.trace() * (n0 * n0.transpose()) -
           (m.mu - m.mu_c) / (m.mu + m.mu_c) * (nx * n0.transpose());
}

Eigen::Matrix3d apply_C3d(const Eigen::Matrix3d& t, const MaterialConstants& m)
{
    return m.mu * (t + t.transpose()) + m.mu_c * (t - t.transpose()) +
           m.lambda * t.trace() * Eigen::Matrix3d::Identity();
}

Eigen::Matrix3d apply_G3d(const Eigen::Matrix3d& t, const MaterialConstants& m)
{
    const double s = m.mu * m.L_c * m.L_c;
    return s * (m.b1 * (t + t.transpose()) + m.b2 * (t - t.transpose()) +
                2.0 * (m.b3 - m.b1 / 3.0) * t.trace() * Eigen::Matrix3d::Identity());
}

namespace {

// shared index machinery for the f9-style component formulas
Eigen::Matrix3d apply_4th_index(const SurfaceFrame& f, const Eigen::Matrix3d& t, double c_sym, double c_skew,
                                double c_tr)
{
    // frame metric at x3 = 0: g^{ab} = a^{ab}, g^{33} = 1, mixed terms 0
    Eigen::Matrix3d gi = Eigen::Matrix3d::Zero();
    gi.topLeftCorner<2, 2>() = f.metric_inv;
    gi(2, 2) = 1.0;
    Eigen::Matrix3d basis; // covariant basis columns
    basis.col(0) = f.a1;
    basis.col(1) = f.a2;
    basis.col(2) = f.n0;
    // covariant components T_{kl} = a_k . T a_l
    const Eigen::Matrix3d tc = basis.transpose() * t * basis;
    Eigen::Matrix3d out_con = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    const double cijkl = c_sym * (gi(i, k) * gi(j, l) + gi(i, l) * gi(j, k)) +
                                         c_skew * (gi(i, k) * gi(j, l) - gi(i, l) * gi(j, k)) +
                                         c_tr * gi(i, j) * gi(k, l);
                    out_con(i, j) += cijkl * tc(k, l);
                }
    // embed back: contravariant components against the covariant basis
    return basis * out_con * basis.transpose();
}

} // namespace

Eigen::Matrix3d apply_C3d_index(const SurfaceFrame& f, const Eigen::Matrix3d& t, const MaterialConstants& m)
{
    return apply_4th_index(f, t, m.mu, m.mu_c, m.lambda);
}

Eigen::Matrix3d apply_G3d_index(const SurfaceFrame& f, const Eigen::Matrix3d& t, const MaterialConstants& m)
{
    const double s = m.mu * m.L_c * m.L_c;
    return apply_4th_index(f, t, s * m.b1, s * m.b2, s * 2.0 * (m.b3 - m.b1 / 3.0));
}

ShellModuli shell_moduli(const FramePtr& f, const MaterialConstants& m)
{
    ShellModuli mod;
    mod.frame = f;
    const Eigen::Matrix2d& gi = f->metric_inv;
    const double cs_tr = 2.0 * m.lambda * m.mu / (m.lambda + 2.0 * m.mu);
    const double s = m.mu * m.L_c * m.L_c;
    const double gs_tr = s * 2.0 * (m.b3 - m.b1 / 3.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int g = 0; g < 2; ++g)
                for (int d = 0; d < 2; ++d) {
                    const double ss = gi(a, g) * gi(b, d) + gi(a, d) * gi(b, g);
                    const double sk = gi(a, g) * gi(b, d) - gi(a, d) * gi(b, g);
                    const double tr = gi(a, b) * gi(g, d);
                    mod.c_s[ShellModuli::idx(a, b, g, d)] = m.mu * ss + m.mu_c * sk + cs_tr * tr;
                    mod.g_s[ShellModuli::idx(a, b, g, d)] = s * (m.b1 * ss + m.b2 * sk) + gs_tr * tr;
                }
    return mod;
}

namespace {

PlanarTensor apply_moduli(const ShellModuli& mod, const std::array<double, 16>& c, const PlanarTensor& t)
{
    require_same_frame(mod.frame, t.frame());
    Eigen::Matrix2d out_con = Eigen::Matrix2d::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int g = 0; g < 2; ++g)
                for (int d = 0; d < 2; ++d)
                    out_con(a, b) += c[ShellModuli::idx(a, b, g, d)] * t.cov()(g, d);
    const Eigen::Matrix2d& gm = mod.frame->metric;
    return {mod.frame, gm * out_con * gm};
}

} // namespace

PlanarTensor ShellModuli::apply_cs(const PlanarTensor& t) const
{
    return apply_moduli(*this, c_s, t);
}

PlanarTensor ShellModuli::apply_gs(const PlanarTensor& t) const
{
    return apply_moduli(*this, g_s, t);
}

PlanarTensor apply_cs_direct(const PlanarTensor& t, const MaterialConstants& m)
{
    const PlanarTensor a = PlanarTensor::identity(t.frame());
    return t.sym() * (2.0 * m.mu) + t.skew() * (2.0 * m.mu_c) +
           a * (2.0 * m.lambda * m.mu / (m.lambda + 2.0 * m.mu) * t.trace());
}

PlanarTensor apply_cs_dev(const PlanarTensor& t, const MaterialConstants& m)
{
    const PlanarTensor a = PlanarTensor::identity(t.frame());
    return t.sym().dev_s() * (2.0 * m.mu) + t.skew() * (2.0 * m.mu_c) +
           a * (m.mu * (3.0 * m.lambda + 2.0 * m.mu) / (m.lambda + 2.0 * m.mu) * t.trace());
}

PlanarTensor apply_gs_direct(const PlanarTensor& t, const MaterialConstants& m)
{
    const double s = 2.0 * m.mu * m.L_c * m.L_c;
    const PlanarTensor a = PlanarTensor::identity(t.frame());
    return t.sym() * (s * m.b1) + t.skew() * (s * m.b2) + a * (s * (m.b3 - m.b1 / 3.0) * t.trace());
}

PlanarTensor apply_gs_dev(const PlanarTensor& t, const MaterialConstants& m)
{
    const double s = 2.0 * m.mu * m.L_c * m.L_c;
    const PlanarTensor a = PlanarTensor::identity(t.frame());
    return t.sym().dev_s() * (s * m.b1) + t.skew() * (s * m.b2) + a * (s * (m.b3 + m.b1 / 6.0) * t.trace());
}

namespace {

// quadratic Cosserat form with an explicit transversal weight; the planar
// block is shared by the harmonic and arithmetic variants
double coss_quadratic(const ShellTensor& x, const MaterialConstants& m, double shear_coef)
{
    const PlanarTensor p = x.planar();
    const double tr = p.trace();
    const double tr_coef = m.mu * (3.0 * m.lambda + 2.0 * m.mu) / (2.0 * (m.lambda + 2.0 * m.mu));
    return m.mu * p.sym().dev_s().norm2() + m.mu_c * p.skew().norm2() + tr_coef * tr * tr +
           shear_coef * x.transversal().norm2();
}

struct ShellArgs {
    PlanarTensor a_e, a_k;   // planar parts of the strain measures
    TangentVector n_e, n_k;  // transversal parts
    PlanarTensor y_p;        // planar part of E b + c K
    TangentVector n_eb;      // transversal part of E b
    PlanarTensor ckbstar;    // c K b*
    PlanarTensor a_kb;       // planar part of K b
    TangentVector n_kb;      // transversal part of K b
    PlanarTensor b, bstar;
};

ShellArgs shell_args(const ShellTensor& e, const ShellTensor& k)
{
    require_same_frame(e.frame(), k.frame());
    const FramePtr& f = e.frame();
    ShellArgs s;
    s.b = PlanarTensor::second_fundamental(f);
    s.bstar = PlanarTensor::b_cofactor(f);
    const ShellTensor eb = e.compose(s.b);
    const ShellTensor ck = alternator_apply(k);
    const ShellTensor kb = k.compose(s.b);
    s.a_e = e.planar();
    s.a_k = k.planar();
    s.n_e = e.transversal();
    s.n_k = k.transversal();
    s.y_p = eb.planar() + ck.planar();
    s.n_eb = eb.transversal();
    s.ckbstar = ck.planar().compose(s.bstar);
    s.a_kb = kb.planar();
    s.n_kb = kb.transversal();
    return s;
}

} // namespace

WShellTerms w_shell_terms(const ShellTensor& e, const ShellTensor& k, const MaterialConstants& m,
                          ShearVariant variant)
{
    const FramePtr& f = e.frame();
    const ShellArgs s = shell_args(e, k);
    const double coef = shear_coefficient(m, variant);
    const double kg = f->gauss_curvature;
    const double t1 = m.h - kg * m.h * m.h * m.h / 12.0;
    const double t3 = m.h * m.h * m.h / 12.0;
    const double cross_sign = fault::flip_energy_cross_term ? 2.0 : -2.0;

    const ShellTensor y = ShellTensor::from_parts(s.y_p, s.n_eb);
    const ShellTensor kb = ShellTensor::from_parts(s.a_kb, s.n_kb);

    WShellTerms out;
    out.h_membrane = t1 * coss_quadratic(ShellTensor::from_parts(s.a_e, TangentVector(f, {0, 0})), m, 0.0);
    out.h_shear = t1 * coef * s.n_e.norm2();
    out.h_curv = t1 * w_curv(k, m);
    const double cross = mixt_planar(s.a_e, s.ckbstar, m);
    out.h3_membrane =
        t3 * (coss_quadratic(ShellTensor::from_parts(s.y_p, TangentVector(f, {0, 0})), m, 0.0) + cross_sign * cross);
    out.h3_shear = t3 * coef * s.n_eb.norm2();
    out.h3_curv = t3 * w_curv(kb, m);
    return out;
}

double w_shell(const ShellTensor& e, const ShellTensor& k, const MaterialConstants& m, ShearVariant variant)
{
    return w_shell_terms(e, k, m, variant).total();
}

double w_shell_alt(const ShellTensor& e, const ShellTensor& k, const MaterialConstants& m, ShearVariant variant)
{
    const ShellArgs s = shell_args(e, k);
    const FramePtr& f = e.frame();
    const double coef = shear_coefficient(m, variant);
    const double kg = f->gauss_curvature;
    const double t1 = m.h - kg * m.h * m.h * m.h / 12.0;
    const double t3 = m.h * m.h * m.h / 12.0;

    const ShellTensor kb = ShellTensor::from_parts(s.a_kb, s.n_kb);
    return t1 * (mixt_planar(s.a_e, s.a_e, m) + coef * s.n_e.norm2() + w_curv_sym_form(k, m)) +
           t3 * (mixt_planar(s.y_p, s.y_p, m) + coef * s.n_eb.norm2() - 2.0 * mixt_planar(s.a_e, s.ckbstar, m) +
                 w_curv_sym_form(kb, m));
}

StressResultants stress_resultants(const ShellTensor& e, const ShellTensor& k, const MaterialConstants& m,
                                   ShearVariant variant)
{
    const FramePtr& f = e.frame();
    const ShellArgs s = shell_args(e, k);
    const ShellModuli mod = shell_moduli(f, m);
    const double coef = shear_coefficient(m, variant);
    const double kg = f->gauss_curvature;
    const double hh = f->mean_curvature;
    const double t3 = m.h * m.h * m.h / 12.0;
    const double t1 = m.h - kg * t3;
    const PlanarTensor c_t = PlanarTensor::alternator(f).transpose();

    // planar stress block
    const PlanarTensor cs_y = mod.apply_cs(s.y_p);
    const PlanarTensor an = mod.apply_cs(s.a_e) * t1 + cs_y.compose(s.b) * t3 - mod.apply_cs(s.ckbstar) * t3;
    // transversal stress block
    const TangentVector nn = (s.n_e * (m.h - 2.0 * kg * t3) + s.n_e.rmul(s.b.cov()) * (2.0 * hh * t3)) * (2.0 * coef);
    // planar couple block
    const PlanarTensor am = mod.apply_gs(s.a_k) * t1 + c_t.compose(cs_y) * t3 -
                            c_t.compose(mod.apply_cs(s.a_e)).compose(s.bstar) * t3 +
                            mod.apply_gs(s.a_kb).compose(s.b) * t3;
    // transversal couple block
    const double gcoef = m.mu * m.L_c * m.L_c * (m.b1 + m.b2);
    const TangentVector nm = (s.n_k * (m.h - 2.0 * kg * t3) + s.n_k.rmul(s.b.cov()) * (2.0 * hh * t3)) * gcoef;

    StressResultants out;
    out.n = ShellTensor::from_parts(an, nn);
    out.m = ShellTensor::from_parts(am, nm);
    return out;
}

} // namespace cosshell

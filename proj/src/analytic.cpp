#include "cosshell/analytic.hpp"

#include <cmath>

#include "cosshell/so3.hpp"

namespace cosshell {

namespace {

// orthonormal adapted frame [w/|w|, n x t1, n] of a surface jet and its
// parametric derivatives
struct AdaptedFrame {
    Eigen::Matrix3d t;      // columns t1, t2, n
    Eigen::Matrix3d dt[2];  // derivatives of the columns
    Eigen::Vector3d n_d[2]; // derivatives of the normal column
};

Eigen::Vector3d normalize_d(const Eigen::Vector3d& w, const Eigen::Vector3d& dw, const Eigen::Vector3d& unit)
{
    return (dw - unit * unit.dot(dw)) / w.norm();
}

AdaptedFrame adapted_frame(const Jet2& j)
{
    AdaptedFrame f;
    const Eigen::Vector3d t1 = j.yu.normalized();
    const Eigen::Vector3d nr = j.yu.cross(j.yv);
    const Eigen::Vector3d n = nr.normalized();
    const Eigen::Vector3d t2 = n.cross(t1);

    const Eigen::Vector3d dyu[2] = {j.yuu, j.yuv};
    const Eigen::Vector3d dnr[2] = {j.yuu.cross(j.yv) + j.yu.cross(j.yuv), j.yuv.cross(j.yv) + j.yu.cross(j.yvv)};
    for (int a = 0; a < 2; ++a) {
        const Eigen::Vector3d dt1 = normalize_d(j.yu, dyu[a], t1);
        const Eigen::Vector3d dn = normalize_d(nr, dnr[a], n);
        f.dt[a].col(0) = dt1;
        f.dt[a].col(1) = dn.cross(t1) + n.cross(dt1);
        f.dt[a].col(2) = dn;
        f.n_d[a] = dn;
    }
    f.t.col(0) = t1;
    f.t.col(1) = t2;
    f.t.col(2) = n;
    return f;
}

} // namespace

KLPointData analytic_kl_point(const Chart& chart, double u, double v, const DeformationJet& def)
{
    const Jet2 jr = chart.jet(u, v);
    const Jet2 jd = def(u, v);

    KLPointData out;
    out.frame = evaluate_frame(chart, u, v);
    out.m = jd.y;

    const AdaptedFrame fr = adapted_frame(jr);
    const AdaptedFrame fd = adapted_frame(jd);
    out.normal = fd.t.col(2);
    out.q = fd.t * fr.t.transpose();

    const SurfaceFrame& f = *out.frame;

    // shell strain from the exact surface gradient
    Eigen::Matrix3d fs = jd.yu * f.au1.transpose() + jd.yv * f.au2.transpose();
    Eigen::Matrix3d a_emb = f.a1 * f.au1.transpose() + f.a2 * f.au2.transpose();
    out.e = ShellTensor::from_embedding(out.frame, out.q.transpose() * fs - a_emb);

    // bending-curvature from the exact rotation derivatives
    Eigen::Matrix<double, 3, 2> kx;
    for (int a = 0; a < 2; ++a) {
        const Eigen::Matrix3d dq = fd.dt[a] * fr.t.transpose() + fd.t * fr.dt[a].transpose();
        const Eigen::Vector3d ka = so3::axl(out.q.transpose() * dq);
        for (int i = 0; i < 3; ++i)
            kx(i, a) = f.basis_cov(i).dot(ka);
    }
    out.k = ShellTensor(out.frame, kx);

    // Koiter strains
    const Eigen::Vector3d dm[2] = {jd.yu, jd.yv};
    Eigen::Matrix2d eps, rho;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            eps(a, b) = 0.5 * (dm[a].dot(dm[b]) - f.metric(a, b));
            rho(a, b) = -dm[a].dot(fd.n_d[b]) - f.b_cov(a, b);
        }
    eps = 0.5 * (eps + eps.transpose()).eval();
    rho = 0.5 * (rho + rho.transpose()).eval();
    out.eps = PlanarTensor(out.frame, eps);
    out.rho = PlanarTensor(out.frame, rho);
    return out;
}

MidsurfaceConfiguration sample_kl_config(const Chart& chart, const Grid2D& grid, const DeformationJet& def)
{
    MidsurfaceConfiguration c;
    c.grid = grid;
    c.m.resize(grid.count());
    c.q.resize(grid.count());
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i) {
            const KLPointData p = analytic_kl_point(chart, grid.u(i), grid.v(j), def);
            const int n = grid.index(i, j);
            c.m[n] = p.m;
            c.q[n] = Eigen::Quaterniond(p.q).normalized();
        }
    return c;
}

DeformationJet reference_deformation(const Chart& chart)
{
    return [&chart](double u, double v) { return chart.jet(u, v); };
}

DeformationJet plate_cylinder_bend(double r)
{
    return [r](double u, double v) {
        Jet2 j;
        const double c = std::cos(u / r), s = std::sin(u / r);
        j.y = {r * s, v, r * (1.0 - c)};
        j.yu = {c, 0.0, s};
        j.yv = {0.0, 1.0, 0.0};
        j.yuu = {-s / r, 0.0, c / r};
        j.yuv.setZero();
        j.yvv.setZero();
        return j;
    };
}

DeformationJet plate_bump(double s, const Domain& dom)
{
    const double au = M_PI / (dom.u1 - dom.u0), av = M_PI / (dom.v1 - dom.v0);
    const double u0 = dom.u0, v0 = dom.v0;
    return [=](double u, double v) {
        const double su = std::sin(au * (u - u0)), cu = std::cos(au * (u - u0));
        const double sv = std::sin(av * (v - v0)), cv = std::cos(av * (v - v0));
        Jet2 j;
        j.y = {u, v, s * su * sv};
        j.yu = {1.0, 0.0, s * au * cu * sv};
        j.yv = {0.0, 1.0, s * av * su * cv};
        j.yuu = {0.0, 0.0, -s * au * au * su * sv};
        j.yuv = {0.0, 0.0, s * au * av * cu * cv};
        j.yvv = {0.0, 0.0, -s * av * av * su * sv};
        return j;
    };
}

DeformationJet chart_smooth_displacement(const Chart& chart, double s)
{
    return [&chart, s](double u, double v) {
        Jet2 j = chart.jet(u, v);
        const double a = 1.3, b = 0.9;
        const double p = a * u + b * v + 0.3, q = a * u - b * v;
        const Eigen::Vector3d g{std::sin(p), std::cos(q), std::sin(a * u) * std::cos(b * v)};
        const Eigen::Vector3d gu{a * std::cos(p), -a * std::sin(q), a * std::cos(a * u) * std::cos(b * v)};
        const Eigen::Vector3d gv{b * std::cos(p), b * std::sin(q), -b * std::sin(a * u) * std::sin(b * v)};
        const Eigen::Vector3d guu{-a * a * std::sin(p), -a * a * std::cos(q),
                                  -a * a * std::sin(a * u) * std::cos(b * v)};
        const Eigen::Vector3d guv{-a * b * std::sin(p), a * b * std::cos(q),
                                  -a * b * std::cos(a * u) * std::sin(b * v)};
        const Eigen::Vector3d gvv{-b * b * std::sin(p), -b * b * std::cos(q),
                                  -b * b * std::sin(a * u) * std::cos(b * v)};
        j.y += s * g;
        j.yu += s * gu;
        j.yv += s * gv;
        j.yuu += s * guu;
        j.yuv += s * guv;
        j.yvv += s * gvv;
        return j;
    };
}

} // namespace cosshell

#include "cosshell/kinematics.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cosshell/so3.hpp"

namespace cosshell {

FrameField evaluate_frames(const Chart& chart, const Grid2D& grid)
{
    FrameField frames(grid.count());
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i)
            frames[grid.index(i, j)] = evaluate_frame(chart, grid.u(i), grid.v(j));
    return frames;
}

FieldStencil field_d1(int n, int i, double h, BoundaryClosure closure)
{
    if (n < 3)
        throw GridTooSmall("field gradient needs at least 3 nodes per direction");
    if (i == 0) {
        if (closure == BoundaryClosure::sbp)
            return {{0, 1, 1}, {-1.0 / h, 1.0 / h, 0.0}};
        return {{0, 1, 2}, {-1.5 / h, 2.0 / h, -0.5 / h}};
    }
    if (i == n - 1) {
        if (closure == BoundaryClosure::sbp)
            return {{0, -1, -1}, {1.0 / h, -1.0 / h, 0.0}};
        return {{0, -1, -2}, {1.5 / h, -2.0 / h, 0.5 / h}};
    }
    return {{-1, 0, 1}, {-0.5 / h, 0.0, 0.5 / h}};
}

std::vector<double> quadrature_weights(const Grid2D& g, const FrameField& frames)
{
    std::vector<double> w(g.count());
    const double cell = g.du() * g.dv();
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            double f = 1.0;
            if (i == 0 || i == g.nu - 1) f *= 0.5;
            if (j == 0 || j == g.nv - 1) f *= 0.5;
            w[g.index(i, j)] = f * cell * frames[g.index(i, j)]->area_density;
        }
    return w;
}

MidsurfaceConfiguration MidsurfaceConfiguration::reference(const Chart& chart, const Grid2D& grid)
{
    MidsurfaceConfiguration c;
    c.grid = grid;
    c.m.resize(grid.count());
    c.q.assign(grid.count(), Eigen::Quaterniond::Identity());
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i)
            c.m[grid.index(i, j)] = chart.jet(grid.u(i), grid.v(j)).y;
    return c;
}

std::vector<ShellTensor> surface_gradient(const Grid2D& grid, const std::vector<Eigen::Vector3d>& field,
                                          const FrameField& frames)
{
    const auto d = grid_partials(grid, field);
    std::vector<ShellTensor> out;
    out.reserve(grid.count());
    for (int n = 0; n < grid.count(); ++n) {
        const SurfaceFrame& f = *frames[n];
        Eigen::Matrix<double, 3, 2> x;
        for (int i = 0; i < 3; ++i) {
            x(i, 0) = f.basis_cov(i).dot(d[0][n]);
            x(i, 1) = f.basis_cov(i).dot(d[1][n]);
        }
        out.emplace_back(frames[n], x);
    }
    return out;
}

namespace {

// chart positions collected from the frame field
std::vector<Eigen::Vector3d> reference_positions(const Grid2D& grid, const FrameField& frames)
{
    std::vector<Eigen::Vector3d> y(grid.count());
    for (int n = 0; n < grid.count(); ++n)
        y[n] = frames[n]->y0;
    return y;
}

} // namespace

std::vector<ShellTensor> shell_strain(const MidsurfaceConfiguration& config, const FrameField& frames,
                                      BoundaryClosure closure)
{
    // E = Q^T Grad_s m - a with a = Grad_s y0; both gradients use the same
    // stencils, so the reference configuration gives exactly zero strain
    const auto d = grid_partials(config.grid, config.m, closure);
    const auto d0 = grid_partials(config.grid, reference_positions(config.grid, frames), closure);
    std::vector<ShellTensor> out;
    out.reserve(config.grid.count());
    for (int n = 0; n < config.grid.count(); ++n) {
        const SurfaceFrame& f = *frames[n];
        const Eigen::Matrix3d qt = config.rotation(n).transpose();
        const Eigen::Vector3d g1 = qt * d[0][n] - d0[0][n], g2 = qt * d[1][n] - d0[1][n];
        Eigen::Matrix<double, 3, 2> x;
        for (int i = 0; i < 3; ++i) {
            x(i, 0) = f.basis_cov(i).dot(g1);
            x(i, 1) = f.basis_cov(i).dot(g2);
        }
        out.emplace_back(frames[n], x);
    }
    return out;
}

std::vector<ShellTensor> bending_curvature(const MidsurfaceConfiguration& config, const FrameField& frames,
                                           BoundaryClosure closure)
{
    std::vector<Eigen::Matrix3d> rot(config.grid.count());
    for (int n = 0; n < config.grid.count(); ++n)
        rot[n] = config.rotation(n);
    const auto d = grid_partials(config.grid, rot, closure);
    std::vector<ShellTensor> out;
    out.reserve(config.grid.count());
    for (int n = 0; n < config.grid.count(); ++n) {
        const SurfaceFrame& f = *frames[n];
        const Eigen::Vector3d k1 = so3::axl(rot[n].transpose() * d[0][n]);
        const Eigen::Vector3d k2 = so3::axl(rot[n].transpose() * d[1][n]);
        Eigen::Matrix<double, 3, 2> x;
        for (int i = 0; i < 3; ++i) {
            x(i, 0) = f.basis_cov(i).dot(k1);
            x(i, 1) = f.basis_cov(i).dot(k2);
        }
        out.emplace_back(frames[n], x);
    }
    return out;
}

std::vector<ShellTensor> bending_curvature_directors(const MidsurfaceConfiguration& config,
                                                     const FrameField& frames, BoundaryClosure closure)
{
    const int count = config.grid.count();
    std::array<std::vector<Eigen::Vector3d>, 3> d0, dd; // reference / deformed directors
    for (int i = 0; i < 3; ++i) {
        d0[i].resize(count);
        dd[i].resize(count);
    }
    for (int n = 0; n < count; ++n) {
        const Eigen::Matrix3d q0 = frames[n]->q0;
        const Eigen::Matrix3d q = config.rotation(n);
        for (int i = 0; i < 3; ++i) {
            d0[i][n] = q0.col(i);
            dd[i][n] = q * q0.col(i);
        }
    }
    std::array<std::array<std::vector<Eigen::Vector3d>, 2>, 3> pd0, pdd;
    for (int i = 0; i < 3; ++i) {
        pd0[i] = grid_partials(config.grid, d0[i], closure);
        pdd[i] = grid_partials(config.grid, dd[i], closure);
    }
    std::vector<ShellTensor> out;
    out.reserve(count);
    for (int n = 0; n < count; ++n) {
        const SurfaceFrame& f = *frames[n];
        const Eigen::Matrix3d qt = config.rotation(n).transpose();
        Eigen::Matrix<double, 3, 2> x;
        for (int a = 0; a < 2; ++a) {
            Eigen::Vector3d acc = Eigen::Vector3d::Zero();
            for (int i = 0; i < 3; ++i)
                acc += qt * dd[i][n].cross(pdd[i][a][n]) - d0[i][n].cross(pd0[i][a][n]);
            acc *= 0.5;
            for (int i = 0; i < 3; ++i)
                x(i, a) = f.basis_cov(i).dot(acc);
        }
        out.emplace_back(frames[n], x);
    }
    return out;
}

std::vector<KoiterStrains> koiter_strains(const MidsurfaceConfiguration& config, const FrameField& frames)
{
    // deformed and reference surfaces run through the same discrete
    // pipeline; the strains vanish identically at the reference
    const auto dm = grid_partials(config.grid, config.m);
    const auto d0 = grid_partials(config.grid, reference_positions(config.grid, frames));
    const int count = config.grid.count();
    std::vector<Eigen::Vector3d> normal(count), normal0(count);
    for (int n = 0; n < count; ++n) {
        const Eigen::Vector3d cr = dm[0][n].cross(dm[1][n]);
        const double crn = cr.norm();
        if (crn <= 1e-12 * std::max(dm[0][n].norm() * dm[1][n].norm(), 1e-300))
            throw DegenerateDeformedSurface("deformed midsurface is not an immersion");
        normal[n] = cr / crn;
        normal0[n] = d0[0][n].cross(d0[1][n]).normalized();
    }
    const auto dn = grid_partials(config.grid, normal);
    const auto dn0 = grid_partials(config.grid, normal0);
    std::vector<KoiterStrains> out;
    out.reserve(count);
    for (int n = 0; n < count; ++n) {
        Eigen::Matrix2d eps, rho;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                eps(a, b) = 0.5 * (dm[a][n].dot(dm[b][n]) - d0[a][n].dot(d0[b][n]));
                rho(a, b) = -dm[a][n].dot(dn[b][n]) + d0[a][n].dot(dn0[b][n]);
            }
        eps = 0.5 * (eps + eps.transpose()).eval();
        rho = 0.5 * (rho + rho.transpose()).eval();
        out.push_back({PlanarTensor(frames[n], eps), PlanarTensor(frames[n], rho)});
    }
    return out;
}

ExpansionVectors expansion_vectors(const ShellTensor& e, const ShellTensor& k, const SurfaceFrame& frame,
                                   const MaterialConstants& mat, const Eigen::Matrix3d& q_e)
{
    const Eigen::Vector3d d3 = q_e * frame.n0;
    const double lam_frac = mat.lambda / (mat.lambda + 2.0 * mat.mu);
    const double shear_frac = (mat.mu - mat.mu_c) / (mat.mu + mat.mu_c);

    ExpansionVectors out;
    out.alpha = (1.0 - lam_frac * e.trace()) * d3 - shear_frac * (q_e * e.transversal().embed());

    const ShellTensor y = e.compose(PlanarTensor::second_fundamental(e.frame())) + alternator_apply(k);
    out.beta = -lam_frac * y.trace() * d3 - shear_frac * (q_e * y.transversal().embed());
    return out;
}

void save_config_csv(const std::string& path, const MidsurfaceConfiguration& config)
{
    std::ofstream out(path);
    if (!out)
        throw SchemaError("cannot open for writing: " + path);
    out << "idx,u,v,mx,my,mz,qw,qx,qy,qz\n";
    char buf[360];
    const Grid2D& g = config.grid;
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            const int n = g.index(i, j);
            const auto& m = config.m[n];
            const auto& q = config.q[n];
            std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", n,
                          g.u(i), g.v(j), m.x(), m.y(), m.z(), q.w(), q.x(), q.y(), q.z());
            out << buf;
        }
}

MidsurfaceConfiguration load_config_csv(const std::string& path, const Grid2D& grid)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open config csv: " + path);
    MidsurfaceConfiguration c;
    c.grid = grid;
    c.m.assign(grid.count(), Eigen::Vector3d::Zero());
    c.q.assign(grid.count(), Eigen::Quaterniond::Identity());
    std::vector<bool> seen(grid.count(), false);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        if (lineno == 1) {
            if (line.rfind("idx,u,v,mx,my,mz,qw,qx,qy,qz", 0) != 0)
                throw SchemaError(path + ":1: expected header idx,u,v,mx,my,mz,qw,qx,qy,qz");
            continue;
        }
        std::stringstream ss(line);
        std::string tok;
        double vals[10];
        int k = 0;
        while (std::getline(ss, tok, ',') && k < 10)
            vals[k++] = std::stod(tok);
        if (k != 10)
            throw SchemaError(path + ":" + std::to_string(lineno) + ": expected 10 columns");
        const int n = static_cast<int>(vals[0]);
        if (n < 0 || n >= grid.count())
            throw SchemaError(path + ":" + std::to_string(lineno) + ": node index out of range");
        const int i = n % grid.nu, j = n / grid.nu;
        if (std::abs(vals[1] - grid.u(i)) > 1e-9 * std::max(1.0, std::abs(grid.du())) ||
            std::abs(vals[2] - grid.v(j)) > 1e-9 * std::max(1.0, std::abs(grid.dv())))
            throw SchemaError(path + ":" + std::to_string(lineno) + ": node coordinates do not match the grid");
        c.m[n] = {vals[3], vals[4], vals[5]};
        Eigen::Quaterniond q(vals[6], vals[7], vals[8], vals[9]);
        // keep warm starts bit-exact; renormalize only noticeably off-unit input
        if (std::abs(q.squaredNorm() - 1.0) > 1e-12)
            q.normalize();
        c.q[n] = q;
        seen[n] = true;
    }
    for (int n = 0; n < grid.count(); ++n)
        if (!seen[n])
            throw SchemaError(path + ": missing node " + std::to_string(n));
    return c;
}

} // namespace cosshell

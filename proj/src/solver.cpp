#include "cosshell/solver.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "cosshell/so3.hpp"

namespace cosshell {

namespace {

// parallel map over node ranges; summation stays serial so results do not
// depend on the thread count
void parallel_for(int n, int threads, const std::function<void(int, int)>& fn)
{
    if (threads <= 1 || n < 256) {
        fn(0, n);
        return;
    }
    const int nt = std::min(threads, 32);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const int chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        const int lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace

BoundaryConditions BoundaryConditions::none(const Grid2D& grid)
{
    BoundaryConditions b;
    const int n = grid.count();
    b.kind.assign(n, NodeBC::free_node);
    b.m_star.assign(n, Eigen::Vector3d::Zero());
    b.q_star.assign(n, Eigen::Quaterniond::Identity());
    b.edge_force.assign(n, Eigen::Vector3d::Zero());
    b.edge_couple.assign(n, Eigen::Vector3d::Zero());
    b.line_weight.assign(n, 0.0);
    return b;
}

BoundaryConditions BoundaryConditions::clamped_reference(const Chart& chart, const Grid2D& grid)
{
    BoundaryConditions b = none(grid);
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i)
            if (grid.boundary(i, j)) {
                const int n = grid.index(i, j);
                b.kind[n] = NodeBC::dirichlet;
                b.m_star[n] = chart.jet(grid.u(i), grid.v(j)).y;
                b.q_star[n] = Eigen::Quaterniond::Identity();
            }
    return b;
}

bool BoundaryConditions::has_dirichlet() const
{
    for (const auto k : kind)
        if (k == NodeBC::dirichlet)
            return true;
    return false;
}

LoadSpec LoadSpec::zero(const Grid2D& grid)
{
    LoadSpec l;
    l.force.assign(grid.count(), Eigen::Vector3d::Zero());
    l.couple.assign(grid.count(), Eigen::Vector3d::Zero());
    return l;
}

LoadSpec LoadSpec::uniform(const Grid2D& grid, const Eigen::Vector3d& f, const Eigen::Vector3d& c)
{
    LoadSpec l;
    l.force.assign(grid.count(), f);
    l.couple.assign(grid.count(), c);
    return l;
}

ShellProblem::ShellProblem(const Chart& chart, const Grid2D& grid, const MaterialConstants& mat,
                           ShearVariant variant, LoadSpec loads, BoundaryConditions bcs, int threads)
    : chart_(chart), grid_(grid), mat_(mat), variant_(variant), loads_(std::move(loads)),
      bcs_(std::move(bcs)), threads_(std::max(1, threads))
{
    grid_.validate();
    mat_.validate();
    frames_ = evaluate_frames(chart_, grid_);
    weights_ = quadrature_weights(grid_, frames_);
    const int n = grid_.count();
    if (static_cast<int>(loads_.force.size()) != n || static_cast<int>(loads_.couple.size()) != n)
        throw Error("load spec does not match the grid");
    if (static_cast<int>(bcs_.kind.size()) != n)
        throw Error("boundary conditions do not match the grid");
    dead_force_.resize(n);
    dead_couple_.resize(n);
    for (int i = 0; i < n; ++i) {
        dead_force_[i] = weights_[i] * loads_.force[i] + bcs_.line_weight[i] * bcs_.edge_force[i];
        dead_couple_[i] = weights_[i] * loads_.couple[i] + bcs_.line_weight[i] * bcs_.edge_couple[i];
    }
}

double ShellProblem::reference_area() const
{
    double a = 0.0;
    for (const double w : weights_)
        a += w;
    return a;
}

double ShellProblem::load_potential(const MidsurfaceConfiguration& config) const
{
    double pot = 0.0;
    for (int i = 0; i < grid_.count(); ++i) {
        pot += dead_force_[i].dot(config.m[i]);
        if (dead_couple_[i].squaredNorm() > 0.0)
            pot += dead_couple_[i].dot(so3::log(config.rotation(i)));
    }
    return -pot;
}

WShellTerms ShellProblem::energy_terms(const MidsurfaceConfiguration& config) const
{
    const auto e = shell_strain(config, frames_, BoundaryClosure::sbp);
    const auto k = bending_curvature(config, frames_, BoundaryClosure::sbp);
    const int n = grid_.count();
    std::vector<WShellTerms> node_terms(n);
    parallel_for(n, threads_, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i)
            node_terms[i] = w_shell_terms(e[i], k[i], mat_, variant_);
    });
    WShellTerms acc;
    for (int i = 0; i < n; ++i) {
        const double w = weights_[i];
        acc.h_membrane += w * node_terms[i].h_membrane;
        acc.h_shear += w * node_terms[i].h_shear;
        acc.h_curv += w * node_terms[i].h_curv;
        acc.h3_membrane += w * node_terms[i].h3_membrane;
        acc.h3_shear += w * node_terms[i].h3_shear;
        acc.h3_curv += w * node_terms[i].h3_curv;
    }
    return acc;
}

double ShellProblem::total_energy(const MidsurfaceConfiguration& config) const
{
    return energy_terms(config).total() + load_potential(config);
}

void ShellProblem::energy_gradient(const MidsurfaceConfiguration& config, std::vector<Eigen::Vector3d>& grad_m,
                                   std::vector<Eigen::Vector3d>& grad_w) const
{
    const int n = grid_.count();
    const auto e = shell_strain(config, frames_, BoundaryClosure::sbp);
    const auto k = bending_curvature(config, frames_, BoundaryClosure::sbp);

    // per-node resultants and rotation-matrix field
    std::vector<Eigen::Matrix3d> n_amb(n), m_rot(n), rot(n);
    parallel_for(n, threads_, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            const StressResultants sr = stress_resultants(e[i], k[i], mat_, variant_);
            rot[i] = config.rotation(i);
            n_amb[i] = rot[i] * sr.n.embed();
            m_rot[i] = sr.m.embed();
        }
    });
    const auto d_rot = grid_partials(grid_, rot, BoundaryClosure::sbp);
    const auto dm = grid_partials(grid_, config.m, BoundaryClosure::sbp);

    grad_m.assign(n, Eigen::Vector3d::Zero());
    grad_w.assign(n, Eigen::Vector3d::Zero());

    for (int j = 0; j < grid_.nv; ++j)
        for (int i = 0; i < grid_.nu; ++i) {
            const int s = grid_.index(i, j);
            const double w = weights_[s];
            const SurfaceFrame& f = *frames_[s];
            const FieldStencil st[2] = {field_d1(grid_.nu, i, grid_.du(), BoundaryClosure::sbp),
                                        field_d1(grid_.nv, j, grid_.dv(), BoundaryClosure::sbp)};

            // translation part: scatter N a^alpha through the stencils
            for (int a = 0; a < 2; ++a) {
                const Eigen::Vector3d na = w * (n_amb[s] * f.basis_con(a));
                for (int q = 0; q < 3; ++q) {
                    const int p = a == 0 ? grid_.index(i + st[a].offset[q], j) : grid_.index(i, j + st[a].offset[q]);
                    grad_m[p] += st[a].coeff[q] * na;
                }
            }

            // rotation part from the strain term
            const Eigen::Matrix3d fs = dm[0][s] * f.au1.transpose() + dm[1][s] * f.au2.transpose();
            const Eigen::Matrix3d nf = n_amb[s] * fs.transpose();
            grad_w[s] -= w * 2.0 * so3::axl(nf);

            // rotation part from the curvature term
            for (int a = 0; a < 2; ++a) {
                const Eigen::Vector3d ma = m_rot[s] * f.basis_con(a);
                const Eigen::Matrix3d p_sa = rot[s] * so3::skew(ma);
                grad_w[s] -= w * so3::axl(p_sa * d_rot[a][s].transpose());
                for (int q = 0; q < 3; ++q) {
                    const int p = a == 0 ? grid_.index(i + st[a].offset[q], j) : grid_.index(i, j + st[a].offset[q]);
                    grad_w[p] += w * st[a].coeff[q] * so3::axl(p_sa * rot[p].transpose());
                }
            }
        }

    // dead loads; the couple term differentiates c . log(Q) through the
    // left Jacobian of the rotation-vector chart
    for (int i = 0; i < n; ++i) {
        grad_m[i] -= dead_force_[i];
        if (dead_couple_[i].squaredNorm() > 0.0)
            grad_w[i] -= so3::left_jacobian_inv(so3::log(rot[i])).transpose() * dead_couple_[i];
    }

    // projection: Dirichlet nodes are fixed
    for (int i = 0; i < n; ++i)
        if (bcs_.kind[i] == NodeBC::dirichlet) {
            grad_m[i].setZero();
            grad_w[i].setZero();
        }
}

void ShellProblem::equilibrium_residual(const MidsurfaceConfiguration& config,
                                        std::vector<Eigen::Vector3d>& r_force,
                                        std::vector<Eigen::Vector3d>& r_moment,
                                        BoundaryClosure closure) const
{
    const int n = grid_.count();
    const auto e = shell_strain(config, frames_, closure);
    const auto k = bending_curvature(config, frames_, closure);
    std::vector<Eigen::Matrix3d> n_amb(n), m_amb(n);
    parallel_for(n, threads_, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            const StressResultants sr = stress_resultants(e[i], k[i], mat_, variant_);
            const Eigen::Matrix3d rot = config.rotation(i);
            n_amb[i] = rot * sr.n.embed();
            m_amb[i] = rot * sr.m.embed();
        }
    });
    const auto dn = grid_partials(grid_, n_amb);
    const auto dmm = grid_partials(grid_, m_amb);
    const auto dm = grid_partials(grid_, config.m);

    r_force.assign(n, Eigen::Vector3d::Zero());
    r_moment.assign(n, Eigen::Vector3d::Zero());
    for (int j = 1; j < grid_.nv - 1; ++j)
        for (int i = 1; i < grid_.nu - 1; ++i) {
            const int s = grid_.index(i, j);
            const SurfaceFrame& f = *frames_[s];
            const Eigen::Vector3d div_n = dn[0][s] * f.au1 + dn[1][s] * f.au2;
            const Eigen::Vector3d div_m = dmm[0][s] * f.au1 + dmm[1][s] * f.au2;
            const Eigen::Matrix3d fs = dm[0][s] * f.au1.transpose() + dm[1][s] * f.au2.transpose();
            const Eigen::Matrix3d nf = n_amb[s] * fs.transpose();
            r_force[s] = div_n + loads_.force[s];
            r_moment[s] = div_m + 2.0 * so3::axl(nf) + loads_.couple[s];
        }
}

void ShellProblem::apply_dirichlet(MidsurfaceConfiguration& config) const
{
    for (int i = 0; i < grid_.count(); ++i)
        if (bcs_.kind[i] == NodeBC::dirichlet) {
            config.m[i] = bcs_.m_star[i];
            config.q[i] = bcs_.q_star[i];
        }
}

bool ShellProblem::loads_self_equilibrated() const
{
    Eigen::Vector3d net_f = Eigen::Vector3d::Zero(), net_t = Eigen::Vector3d::Zero();
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    double wsum = 0.0;
    for (int i = 0; i < grid_.count(); ++i) {
        const Eigen::Vector3d y = chart_.jet(grid_.u(i % grid_.nu), grid_.v(i / grid_.nu)).y;
        centroid += weights_[i] * y;
        wsum += weights_[i];
    }
    centroid /= wsum;
    double scale = 0.0;
    for (int i = 0; i < grid_.count(); ++i) {
        const Eigen::Vector3d y = chart_.jet(grid_.u(i % grid_.nu), grid_.v(i / grid_.nu)).y;
        net_f += dead_force_[i];
        net_t += (y - centroid).cross(dead_force_[i]) + dead_couple_[i];
        scale += dead_force_[i].norm() + dead_couple_[i].norm();
    }
    if (scale == 0.0)
        return true;
    return net_f.norm() + net_t.norm() <= 1e-10 * scale;
}

namespace {

double dot_all(const std::vector<Eigen::Vector3d>& a, const std::vector<Eigen::Vector3d>& b)
{
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        s += a[i].dot(b[i]);
    return s;
}

} // namespace

SolveReport ShellProblem::solve(MidsurfaceConfiguration& config, const SolveOptions& opts) const
{
    SolveReport rep;
    const int n = grid_.count();
    rep.tol = opts.tol > 0 ? opts.tol : 1e-8 * mat_.h * mat_.mu * reference_area();

    if (!bcs_.has_dirichlet() && !loads_self_equilibrated()) {
        rep.ill_posed_warning = true;
        rep.message = "ill-posed: no Dirichlet boundary and loads are not self-equilibrated";
    }

    apply_dirichlet(config);

    using Field = std::vector<Eigen::Vector3d>;
    Field gm, gw;
    energy_gradient(config, gm, gw);
    double energy = total_energy(config);

    // L-BFGS memory in the stacked tangent (naive transport, pairs with
    // bad curvature are skipped)
    const int mem = std::max(1, opts.lbfgs_memory);
    std::vector<Field> s_m(mem), s_w(mem), y_m(mem), y_w(mem);
    std::vector<double> rho_v(mem);
    int stored = 0, head = 0;

    auto grad_norm = [&](const Field& a, const Field& b) { return std::sqrt(dot_all(a, a) + dot_all(b, b)); };

    double gnorm = grad_norm(gm, gw);
    if (opts.record_history) {
        rep.grad_norm_history.push_back(gnorm);
        rep.energy_history.push_back(energy);
    }

    Field dm(n), dw(n), trial_m(n), tgm, tgw;
    std::vector<Eigen::Quaterniond> trial_q(n);
    int it = 0;
    for (; it < opts.max_iter && gnorm > rep.tol; ++it) {
        // two-loop recursion
        for (int i = 0; i < n; ++i) {
            dm[i] = -gm[i];
            dw[i] = -gw[i];
        }
        std::vector<double> alpha(stored);
        for (int r = 0; r < stored; ++r) {
            const int idx = (head - 1 - r + mem * 8) % mem;
            alpha[r] = rho_v[idx] * (dot_all(s_m[idx], dm) + dot_all(s_w[idx], dw));
            for (int i = 0; i < n; ++i) {
                dm[i] -= alpha[r] * y_m[idx][i];
                dw[i] -= alpha[r] * y_w[idx][i];
            }
        }
        if (stored > 0) {
            const int last = (head - 1 + mem) % mem;
            const double yy = dot_all(y_m[last], y_m[last]) + dot_all(y_w[last], y_w[last]);
            const double sy = 1.0 / rho_v[last];
            const double gamma = sy / std::max(yy, 1e-300);
            for (int i = 0; i < n; ++i) {
                dm[i] *= gamma;
                dw[i] *= gamma;
            }
        } else {
            const double scale = 1.0 / std::max(gnorm, 1e-300);
            for (int i = 0; i < n; ++i) {
                dm[i] *= scale;
                dw[i] *= scale;
            }
        }
        for (int r = stored - 1; r >= 0; --r) {
            const int idx = (head - 1 - r + mem * 8) % mem;
            const double beta = rho_v[idx] * (dot_all(y_m[idx], dm) + dot_all(y_w[idx], dw));
            const double corr = alpha[r] - beta;
            for (int i = 0; i < n; ++i) {
                dm[i] += corr * s_m[idx][i];
                dw[i] += corr * s_w[idx][i];
            }
        }

        double gd = dot_all(gm, dm) + dot_all(gw, dw);
        if (!(gd < 0.0)) {
            // not a descent direction: restart from steepest descent
            stored = 0;
            head = 0;
            const double scale = 1.0 / std::max(gnorm, 1e-300);
            for (int i = 0; i < n; ++i) {
                dm[i] = -gm[i] * scale;
                dw[i] = -gw[i] * scale;
            }
            gd = dot_all(gm, dm) + dot_all(gw, dw);
        }

        // Armijo backtracking; once the predicted decrease falls below the
        // resolution of the energy in double precision, accept steps that
        // reduce the gradient norm instead
        double t = 1.0;
        const double c1 = 1e-4;
        bool accepted = false;
        bool have_trial_grad = false;
        double trial_energy = energy;
        for (int ls = 0; ls < 80; ++ls) {
            for (int i = 0; i < n; ++i) {
                trial_m[i] = config.m[i] + t * dm[i];
                trial_q[i] = (so3::exp_quat(t * dw[i]) * config.q[i]).normalized();
            }
            MidsurfaceConfiguration trial{grid_, trial_m, trial_q};
            trial_energy = total_energy(trial);
            if (trial_energy <= energy + c1 * t * gd) {
                accepted = true;
                break;
            }
            const double pred = c1 * t * gd;
            if (std::abs(pred) <
                8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(energy), 1e-300)) {
                energy_gradient(trial, tgm, tgw);
                have_trial_grad = true;
                if (grad_norm(tgm, tgw) < gnorm) {
                    accepted = true;
                    trial_energy = std::min(trial_energy, energy);
                    break;
                }
            }
            t *= 0.5;
        }
        if (!accepted) {
            rep.message = "line search failed to reduce the energy";
            break;
        }

        config.m = trial_m;
        config.q = trial_q;
        if (!have_trial_grad)
            energy_gradient(config, tgm, tgw);
        energy = trial_energy;

        // curvature-guarded memory update
        Field& sm = s_m[head];
        Field& sw = s_w[head];
        Field& ym = y_m[head];
        Field& yw = y_w[head];
        sm.resize(n);
        sw.resize(n);
        ym.resize(n);
        yw.resize(n);
        for (int i = 0; i < n; ++i) {
            sm[i] = t * dm[i];
            sw[i] = t * dw[i];
            ym[i] = tgm[i] - gm[i];
            yw[i] = tgw[i] - gw[i];
        }
        const double sy = dot_all(sm, ym) + dot_all(sw, yw);
        const double ss = dot_all(sm, sm) + dot_all(sw, sw);
        const double yy = dot_all(ym, ym) + dot_all(yw, yw);
        if (sy > 1e-10 * std::sqrt(ss * yy)) {
            rho_v[head] = 1.0 / sy;
            head = (head + 1) % mem;
            stored = std::min(stored + 1, mem);
        }

        gm.swap(tgm);
        gw.swap(tgw);
        gnorm = grad_norm(gm, gw);
        if (opts.record_history) {
            rep.grad_norm_history.push_back(gnorm);
            rep.energy_history.push_back(energy);
        }
    }

    rep.iterations = it;
    rep.energy = energy;
    rep.grad_norm = gnorm;
    rep.converged = gnorm <= rep.tol;
    if (rep.converged)
        rep.message = "converged";
    else if (rep.message.empty())
        rep.message = "iteration limit reached";

    std::vector<Eigen::Vector3d> rf, rm;
    equilibrium_residual(config, rf, rm);
    for (int j = 1; j < grid_.nv - 1; ++j)
        for (int i = 1; i < grid_.nu - 1; ++i) {
            rep.residual_force_max = std::max(rep.residual_force_max, rf[grid_.index(i, j)].norm());
            rep.residual_moment_max = std::max(rep.residual_moment_max, rm[grid_.index(i, j)].norm());
        }
    return rep;
}

double total_energy(const MidsurfaceConfiguration& config, const Chart& chart, const MaterialConstants& mat,
                    const LoadSpec& loads, ShearVariant variant)
{
    ShellProblem p(chart, config.grid, mat, variant, loads, BoundaryConditions::none(config.grid));
    return p.total_energy(config);
}

void energy_gradient(const MidsurfaceConfiguration& config, const Chart& chart, const MaterialConstants& mat,
                     const LoadSpec& loads, ShearVariant variant, std::vector<Eigen::Vector3d>& grad_m,
                     std::vector<Eigen::Vector3d>& grad_w)
{
    ShellProblem p(chart, config.grid, mat, variant, loads, BoundaryConditions::none(config.grid));
    p.energy_gradient(config, grad_m, grad_w);
}

void equilibrium_residual(const MidsurfaceConfiguration& config, const Chart& chart,
                          const MaterialConstants& mat, const LoadSpec& loads, ShearVariant variant,
                          std::vector<Eigen::Vector3d>& r_force, std::vector<Eigen::Vector3d>& r_moment)
{
    ShellProblem p(chart, config.grid, mat, variant, loads, BoundaryConditions::none(config.grid));
    p.equilibrium_residual(config, r_force, r_moment, BoundaryClosure::second_order);
}

SolveReport solve(const Chart& chart, const Grid2D& grid, const MaterialConstants& mat, ShearVariant variant,
                  const LoadSpec& loads, const BoundaryConditions& bcs, MidsurfaceConfiguration& config,
                  const SolveOptions& opts)
{
    ShellProblem p(chart, grid, mat, variant, loads, bcs, opts.threads);
    return p.solve(config, opts);
}

} // namespace cosshell

#include "cosshell/geometry.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cosshell {

namespace {

std::atomic<std::uint64_t> g_frame_counter{1};

// sqrt of an SPD 2x2 matrix
Eigen::Matrix2d sqrt_spd2(const Eigen::Matrix2d& a)
{
    const double s = std::sqrt(a.determinant());
    const double t = std::sqrt(a.trace() + 2.0 * s);
    return (a + s * Eigen::Matrix2d::Identity()) / t;
}

struct Stencil {
    int offset[5];
    double coeff[5];
    int count;
};

// first derivative: 4th order centered, 2nd order near and at edges
Stencil d1_stencil(int n, int i, double h)
{
    Stencil s{};
    if (i >= 2 && i <= n - 3) {
        s = {{-2, -1, 0, 1, 2}, {1, -8, 0, 8, -1}, 5};
        for (auto& c : s.coeff) c /= 12.0 * h;
    } else if (i >= 1 && i <= n - 2) {
        s = {{-1, 0, 1, 0, 0}, {-0.5, 0, 0.5, 0, 0}, 3};
        for (auto& c : s.coeff) c /= h;
    } else if (i == 0) {
        s = {{0, 1, 2, 0, 0}, {-1.5, 2.0, -0.5, 0, 0}, 3};
        for (auto& c : s.coeff) c /= h;
    } else {
        s = {{0, -1, -2, 0, 0}, {1.5, -2.0, 0.5, 0, 0}, 3};
        for (auto& c : s.coeff) c /= h;
    }
    return s;
}

Stencil d2_stencil(int n, int i, double h)
{
    Stencil s{};
    const double h2 = h * h;
    if (i >= 2 && i <= n - 3) {
        s = {{-2, -1, 0, 1, 2}, {-1, 16, -30, 16, -1}, 5};
        for (auto& c : s.coeff) c /= 12.0 * h2;
    } else if (i >= 1 && i <= n - 2) {
        s = {{-1, 0, 1, 0, 0}, {1, -2, 1, 0, 0}, 3};
        for (auto& c : s.coeff) c /= h2;
    } else if (i == 0) {
        s = {{0, 1, 2, 3, 0}, {2, -5, 4, -1, 0}, 4};
        for (auto& c : s.coeff) c /= h2;
    } else {
        s = {{0, -1, -2, -3, 0}, {2, -5, 4, -1, 0}, 4};
        for (auto& c : s.coeff) c /= h2;
    }
    return s;
}

} // namespace

Jet2 PlateChart::jet(double u, double v) const
{
    Jet2 j;
    j.y = {u, v, 0.0};
    j.yu = {1.0, 0.0, 0.0};
    j.yv = {0.0, 1.0, 0.0};
    j.yuu.setZero();
    j.yuv.setZero();
    j.yvv.setZero();
    return j;
}

Jet2 CylinderChart::jet(double u, double v) const
{
    const double r = radius_;
    Jet2 j;
    j.y = {r * std::cos(u), r * std::sin(u), v};
    j.yu = {-r * std::sin(u), r * std::cos(u), 0.0};
    j.yv = {0.0, 0.0, 1.0};
    j.yuu = {-r * std::cos(u), -r * std::sin(u), 0.0};
    j.yuv.setZero();
    j.yvv.setZero();
    return j;
}

Jet2 SphereCapChart::jet(double u, double v) const
{
    const double r = radius_;
    const double su = std::sin(u), cu = std::cos(u);
    const double sv = std::sin(v), cv = std::cos(v);
    Jet2 j;
    j.y = {r * sv * cu, r * sv * su, r * cv};
    j.yu = {-r * sv * su, r * sv * cu, 0.0};
    j.yv = {r * cv * cu, r * cv * su, -r * sv};
    j.yuu = {-r * sv * cu, -r * sv * su, 0.0};
    j.yuv = {-r * cv * su, r * cv * cu, 0.0};
    j.yvv = -j.y;
    return j;
}

SampledGridChart::SampledGridChart(int nu, int nv, Domain d, std::vector<Eigen::Vector3d> points)
    : nu_(nu), nv_(nv), dom_(d), points_(std::move(points))
{
    if (nu_ < 4 || nv_ < 4)
        throw GridTooSmall("sampled-grid chart needs at least 4 nodes per direction");
    if (points_.size() != static_cast<size_t>(nu_) * nv_)
        throw SchemaError("sampled-grid chart: point count does not match lattice size");
}

SampledGridChart SampledGridChart::from_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open sampled-grid csv: " + path);
    std::string line;
    std::vector<std::array<double, 5>> rows;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        if (lineno == 1 && line.find("u") != std::string::npos && line.find("x") != std::string::npos)
            continue; // header
        std::array<double, 5> r{};
        std::stringstream ss(line);
        std::string tok;
        int k = 0;
        while (std::getline(ss, tok, ',') && k < 5)
            r[k++] = std::stod(tok);
        if (k != 5)
            throw SchemaError("sampled-grid csv line " + std::to_string(lineno) + ": expected 5 columns u,v,x,y,z");
        rows.push_back(r);
    }
    if (rows.empty())
        throw SchemaError("sampled-grid csv is empty");

    // recover lattice dimensions: u cycles fastest
    int nu = 0;
    while (nu < static_cast<int>(rows.size()) && std::abs(rows[nu][1] - rows[0][1]) < 1e-14)
        ++nu;
    if (nu < 2 || rows.size() % nu != 0)
        throw SchemaError("sampled-grid csv: rows do not form a rectangular lattice");
    const int nv = static_cast<int>(rows.size()) / nu;
    Domain d{rows[0][0], rows[nu - 1][0], rows[0][1], rows.back()[1]};
    std::vector<Eigen::Vector3d> pts(rows.size());
    const double du = (d.u1 - d.u0) / (nu - 1), dv = (d.v1 - d.v0) / (nv - 1);
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            const auto& r = rows[static_cast<size_t>(j) * nu + i];
            if (std::abs(r[0] - (d.u0 + i * du)) > 1e-9 * std::max(1.0, std::abs(du)) ||
                std::abs(r[1] - (d.v0 + j * dv)) > 1e-9 * std::max(1.0, std::abs(dv)))
                throw SchemaError("sampled-grid csv: lattice is not uniform at row " + std::to_string(j * nu + i + 1));
            pts[static_cast<size_t>(j) * nu + i] = {r[2], r[3], r[4]};
        }
    return SampledGridChart(nu, nv, d, std::move(pts));
}

Jet2 SampledGridChart::jet(double u, double v) const
{
    const double du = (dom_.u1 - dom_.u0) / (nu_ - 1);
    const double dv = (dom_.v1 - dom_.v0) / (nv_ - 1);
    const int i = static_cast<int>(std::lround((u - dom_.u0) / du));
    const int j = static_cast<int>(std::lround((v - dom_.v0) / dv));
    if (i < 0 || i >= nu_ || j < 0 || j >= nv_ ||
        std::abs(u - (dom_.u0 + i * du)) > 1e-9 * std::max(1.0, du) ||
        std::abs(v - (dom_.v0 + j * dv)) > 1e-9 * std::max(1.0, dv))
        throw SchemaError("sampled-grid chart queried off the lattice");

    const Stencil su1 = d1_stencil(nu_, i, du), su2 = d2_stencil(nu_, i, du);
    const Stencil sv1 = d1_stencil(nv_, j, dv), sv2 = d2_stencil(nv_, j, dv);

    Jet2 out;
    out.y = at(i, j);
    out.yu.setZero();
    out.yuu.setZero();
    for (int k = 0; k < su1.count; ++k) out.yu += su1.coeff[k] * at(i + su1.offset[k], j);
    for (int k = 0; k < su2.count; ++k) out.yuu += su2.coeff[k] * at(i + su2.offset[k], j);
    out.yv.setZero();
    out.yvv.setZero();
    for (int k = 0; k < sv1.count; ++k) out.yv += sv1.coeff[k] * at(i, j + sv1.offset[k]);
    for (int k = 0; k < sv2.count; ++k) out.yvv += sv2.coeff[k] * at(i, j + sv2.offset[k]);
    out.yuv.setZero();
    for (int k = 0; k < sv1.count; ++k) {
        Eigen::Vector3d yu_row = Eigen::Vector3d::Zero();
        for (int l = 0; l < su1.count; ++l)
            yu_row += su1.coeff[l] * at(i + su1.offset[l], j + sv1.offset[k]);
        out.yuv += sv1.coeff[k] * yu_row;
    }
    return out;
}

FramePtr make_frame(const Eigen::Vector3d& a1, const Eigen::Vector3d& a2, const Eigen::Matrix2d& b_cov,
                    const Eigen::Vector3d& y0)
{
    const Eigen::Vector3d cr = a1.cross(a2);
    const double crn = cr.norm();
    if (crn < 1e-12 * a1.norm() * a2.norm())
        throw DegenerateChart("chart is not an immersion at the queried point");

    auto f = std::make_shared<SurfaceFrame>();
    f->y0 = y0;
    f->a1 = a1;
    f->a2 = a2;
    f->n0 = cr / crn;
    f->metric << a1.dot(a1), a1.dot(a2), a2.dot(a1), a2.dot(a2);
    f->metric_inv = f->metric.inverse();
    f->area_density = crn; // sqrt(det a_{ab}) = ||a1 x a2||
    f->b_cov = 0.5 * (b_cov + b_cov.transpose());
    f->b_mixed = f->metric_inv * f->b_cov;
    f->mean_curvature = 0.5 * f->b_mixed.trace();
    f->gauss_curvature = f->b_mixed.determinant();
    f->au1 = f->metric_inv(0, 0) * a1 + f->metric_inv(0, 1) * a2;
    f->au2 = f->metric_inv(1, 0) * a1 + f->metric_inv(1, 1) * a2;

    const Eigen::Matrix2d u2inv = sqrt_spd2(f->metric).inverse();
    Eigen::Matrix3d q0;
    q0.col(0) = u2inv(0, 0) * a1 + u2inv(1, 0) * a2;
    q0.col(1) = u2inv(0, 1) * a1 + u2inv(1, 1) * a2;
    q0.col(2) = f->n0;
    f->q0 = q0;

    f->id = g_frame_counter.fetch_add(1, std::memory_order_relaxed);
    return f;
}

FramePtr evaluate_frame(const Chart& chart, double u, double v)
{
    const Jet2 j = chart.jet(u, v);
    Eigen::Matrix2d b;
    // b_{ab} = n0 . y_{,ab}; needs the normal first
    const Eigen::Vector3d cr = j.yu.cross(j.yv);
    const double crn = cr.norm();
    if (crn < 1e-12 * j.yu.norm() * j.yv.norm())
        throw DegenerateChart("chart is not an immersion at the queried point");
    const Eigen::Vector3d n0 = cr / crn;
    b << n0.dot(j.yuu), n0.dot(j.yuv), n0.dot(j.yuv), n0.dot(j.yvv);
    return make_frame(j.yu, j.yv, b, j.y);
}

Shifter shifter(const SurfaceFrame& frame, double x3)
{
    Shifter s;
    s.x3 = x3;
    s.det = 1.0 - 2.0 * frame.mean_curvature * x3 + frame.gauss_curvature * x3 * x3;
    if (std::abs(s.det) < 1e-12)
        throw SingularShifter("shifter is singular: x3 at a focal distance");
    s.mu_cov = frame.metric - x3 * frame.b_cov;
    s.mu_inv_cov = (frame.metric - x3 * frame.b_cofactor_cov()) / s.det;
    return s;
}

namespace {

class AffineReparamChart final : public Chart {
public:
    AffineReparamChart(std::shared_ptr<const Chart> base, const Eigen::Matrix2d& m, const Eigen::Vector2d& c)
        : base_(std::move(base)), m_(m), c_(c)
    {
        const Domain bd = base_->domain();
        const Eigen::Matrix2d minv = m_.inverse();
        Eigen::Vector2d lo{1e300, 1e300}, hi{-1e300, -1e300};
        for (const double u : {bd.u0, bd.u1})
            for (const double v : {bd.v0, bd.v1}) {
                const Eigen::Vector2d st = minv * (Eigen::Vector2d(u, v) - c_);
                lo = lo.cwiseMin(st);
                hi = hi.cwiseMax(st);
            }
        dom_ = {lo.x(), hi.x(), lo.y(), hi.y()};
    }

    Jet2 jet(double s, double t) const override
    {
        const Eigen::Vector2d uv = m_ * Eigen::Vector2d(s, t) + c_;
        const Jet2 b = base_->jet(uv.x(), uv.y());
        Jet2 j;
        j.y = b.y;
        j.yu = m_(0, 0) * b.yu + m_(1, 0) * b.yv;
        j.yv = m_(0, 1) * b.yu + m_(1, 1) * b.yv;
        j.yuu = m_(0, 0) * m_(0, 0) * b.yuu + 2.0 * m_(0, 0) * m_(1, 0) * b.yuv + m_(1, 0) * m_(1, 0) * b.yvv;
        j.yuv = m_(0, 0) * m_(0, 1) * b.yuu + (m_(0, 0) * m_(1, 1) + m_(0, 1) * m_(1, 0)) * b.yuv +
                m_(1, 0) * m_(1, 1) * b.yvv;
        j.yvv = m_(0, 1) * m_(0, 1) * b.yuu + 2.0 * m_(0, 1) * m_(1, 1) * b.yuv + m_(1, 1) * m_(1, 1) * b.yvv;
        return j;
    }
    Domain domain() const override { return dom_; }
    std::string kind() const override { return "affine-reparam(" + base_->kind() + ")"; }

private:
    std::shared_ptr<const Chart> base_;
    Eigen::Matrix2d m_;
    Eigen::Vector2d c_;
    Domain dom_;
};

} // namespace

std::unique_ptr<Chart> affine_reparam(std::shared_ptr<const Chart> base, const Eigen::Matrix2d& map,
                                      const Eigen::Vector2d& shift)
{
    return std::make_unique<AffineReparamChart>(std::move(base), map, shift);
}

} // namespace cosshell

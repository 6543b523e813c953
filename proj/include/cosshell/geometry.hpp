#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cosshell/errors.hpp"

namespace cosshell {

/// Parameter rectangle omega = [u0,u1] x [v0,v1].
struct Domain {
    double u0 = 0.0, u1 = 1.0, v0 = 0.0, v1 = 1.0;
};

/// Position and derivatives of the midsurface map up to second order.
struct Jet2 {
    Eigen::Vector3d y, yu, yv, yuu, yuv, yvv;
};

/// Reference midsurface chart y0(u, v).
class Chart {
public:
    virtual ~Chart() = default;
    virtual Jet2 jet(double u, double v) const = 0;
    virtual Domain domain() const = 0;
    virtual std::string kind() const = 0;
};

class PlateChart final : public Chart {
public:
    explicit PlateChart(Domain d) : dom_(d) {}
    Jet2 jet(double u, double v) const override;
    Domain domain() const override { return dom_; }
    std::string kind() const override { return "plate"; }

private:
    Domain dom_;
};

/// y0 = (R cos u, R sin u, v); induced normal points outward, H = -1/(2R).
class CylinderChart final : public Chart {
public:
    CylinderChart(double radius, Domain d) : radius_(radius), dom_(d) {}
    Jet2 jet(double u, double v) const override;
    Domain domain() const override { return dom_; }
    std::string kind() const override { return "cylinder"; }
    double radius() const { return radius_; }

private:
    double radius_;
    Domain dom_;
};

/// y0 = R (sin v cos u, sin v sin u, cos v); u longitude, v colatitude.
/// Induced normal points inward, H = 1/R, K = 1/R^2.
class SphereCapChart final : public Chart {
public:
    SphereCapChart(double radius, Domain d) : radius_(radius), dom_(d) {}
    Jet2 jet(double u, double v) const override;
    Domain domain() const override { return dom_; }
    std::string kind() const override { return "sphere-cap"; }
    double radius() const { return radius_; }

private:
    double radius_;
    Domain dom_;
};

/// Chart sampled on a rectangular lattice; derivatives by finite
/// differences (4th order centered inside, 2nd order near/at edges).
/// Queries are valid at lattice points only.
class SampledGridChart final : public Chart {
public:
    SampledGridChart(int nu, int nv, Domain d, std::vector<Eigen::Vector3d> points);
    static SampledGridChart from_csv(const std::string& path);

    Jet2 jet(double u, double v) const override;
    Domain domain() const override { return dom_; }
    std::string kind() const override { return "sampled-grid"; }
    int nu() const { return nu_; }
    int nv() const { return nv_; }

private:
    const Eigen::Vector3d& at(int i, int j) const { return points_[static_cast<size_t>(j) * nu_ + i]; }
    int nu_, nv_;
    Domain dom_;
    std::vector<Eigen::Vector3d> points_; // row-major, u fastest
};

/// First/second fundamental data of the reference midsurface at one point.
/// Frames carry a unique id; tensors remember the frame they live on and
/// operations across distinct frames are rejected.
struct SurfaceFrame {
    Eigen::Vector3d y0 = Eigen::Vector3d::Zero(); // chart position (zero for synthetic frames)
    Eigen::Vector3d a1, a2;   // covariant basis a_alpha
    Eigen::Vector3d au1, au2; // contravariant basis a^alpha
    Eigen::Vector3d n0;       // unit normal, a^3 = a_3
    Eigen::Matrix2d metric;       // a_{ab}
    Eigen::Matrix2d metric_inv;   // a^{ab}
    double area_density = 1.0;    // sqrt(det a_{ab})
    Eigen::Matrix2d b_cov;        // b_{ab}
    Eigen::Matrix2d b_mixed;      // b^a_b
    double mean_curvature = 0.0;  // H
    double gauss_curvature = 0.0; // K
    Eigen::Matrix3d q0;           // polar rotation of [a1 a2 n0]; d_i^0 = q0 e_i
    std::uint64_t id = 0;

    Eigen::Vector3d basis_cov(int i) const { return i == 0 ? a1 : (i == 1 ? a2 : n0); }
    Eigen::Vector3d basis_con(int i) const { return i == 0 ? au1 : (i == 1 ? au2 : n0); }
    /// Cofactor b* = -b + 2H a, covariant components.
    Eigen::Matrix2d b_cofactor_cov() const { return -b_cov + 2.0 * mean_curvature * metric; }
};

using FramePtr = std::shared_ptr<const SurfaceFrame>;

/// Frame from chart data; throws DegenerateChart when the immersion test
/// ||yu x yv|| >= 1e-12 ||yu|| ||yv|| fails.
FramePtr evaluate_frame(const Chart& chart, double u, double v);

/// Frame from raw basis vectors and a prescribed (symmetric) second
/// fundamental form. Used for sampled data and synthetic test frames.
FramePtr make_frame(const Eigen::Vector3d& a1, const Eigen::Vector3d& a2, const Eigen::Matrix2d& b_cov,
                    const Eigen::Vector3d& y0 = Eigen::Vector3d::Zero());

/// Thickness-line tensors mu = a - x3 b and its inverse.
struct Shifter {
    double x3 = 0.0;
    Eigen::Matrix2d mu_cov;     // covariant components of mu
    Eigen::Matrix2d mu_inv_cov; // covariant components of mu^{-1}
    double det = 1.0;           // 1 - 2 H x3 + K x3^2
};

/// Throws SingularShifter if |det| < 1e-12.
Shifter shifter(const SurfaceFrame& frame, double x3);

std::unique_ptr<Chart> affine_reparam(std::shared_ptr<const Chart> base, const Eigen::Matrix2d& map,
                                      const Eigen::Vector2d& shift);

} // namespace cosshell

#pragma once

#include <Eigen/Core>
#include <utility>

#include "cosshell/geometry.hpp"

namespace cosshell {

/// Tangent-plane vector stored by covariant components v_a against a^a.
class TangentVector {
public:
    TangentVector() = default;
    TangentVector(FramePtr frame, const Eigen::Vector2d& cov) : f_(std::move(frame)), v_(cov) {}

    const Eigen::Vector2d& cov() const { return v_; }
    const FramePtr& frame() const { return f_; }
    Eigen::Vector3d embed() const { return v_.x() * f_->au1 + v_.y() * f_->au2; }
    double dot(const TangentVector& o) const;
    double norm2() const { return dot(*this); }
    /// v b for a symmetric planar tensor b: (v b)_a = v_g a^{gd} b_{da}.
    TangentVector rmul(const Eigen::Matrix2d& planar_cov) const
    {
        return {f_, planar_cov.transpose() * (f_->metric_inv * v_)};
    }
    TangentVector operator+(const TangentVector& o) const;
    TangentVector operator*(double s) const { return {f_, s * v_}; }

private:
    FramePtr f_;
    Eigen::Vector2d v_{0, 0};
};

/// Planar tensor T = T_{ab} a^a (x) a^b.
class PlanarTensor {
public:
    PlanarTensor() = default;
    PlanarTensor(FramePtr frame, const Eigen::Matrix2d& cov) : f_(std::move(frame)), t_(cov) {}

    static PlanarTensor identity(const FramePtr& f) { return {f, f->metric}; }
    static PlanarTensor alternator(const FramePtr& f);
    static PlanarTensor second_fundamental(const FramePtr& f) { return {f, f->b_cov}; }
    static PlanarTensor b_cofactor(const FramePtr& f) { return {f, f->b_cofactor_cov()}; }

    const Eigen::Matrix2d& cov() const { return t_; }
    const FramePtr& frame() const { return f_; }

    PlanarTensor transpose() const { return {f_, t_.transpose()}; }
    PlanarTensor sym() const { return {f_, 0.5 * (t_ + t_.transpose())}; }
    PlanarTensor skew() const { return {f_, 0.5 * (t_ - t_.transpose())}; }
    double trace() const { return (f_->metric_inv.cwiseProduct(t_)).sum(); }
    /// dev_s T = T - (tr T / 2) a.
    PlanarTensor dev_s() const { return {f_, t_ - 0.5 * trace() * f_->metric}; }
    double ddot(const PlanarTensor& o) const;
    double norm2() const { return ddot(*this); }
    /// Composition (T S), covariant components T a^{-1} S.
    PlanarTensor compose(const PlanarTensor& o) const;
    Eigen::Matrix3d embed() const;

    PlanarTensor operator+(const PlanarTensor& o) const;
    PlanarTensor operator-(const PlanarTensor& o) const;
    PlanarTensor operator*(double s) const { return {f_, s * t_}; }

private:
    FramePtr f_;
    Eigen::Matrix2d t_ = Eigen::Matrix2d::Zero();
};

/// Mixed surface tensor X = X_{ia} a^i (x) a^a with a^3 = n0; the common
/// shape of the shell strain measures and rotated stress resultants.
class ShellTensor {
public:
    ShellTensor() = default;
    ShellTensor(FramePtr frame, const Eigen::Matrix<double, 3, 2>& cov) : f_(std::move(frame)), x_(cov) {}

    static ShellTensor zero(const FramePtr& f) { return {f, Eigen::Matrix<double, 3, 2>::Zero()}; }
    /// Planar identity a embedded as a shell tensor.
    static ShellTensor identity(const FramePtr& f);
    static ShellTensor from_parts(const PlanarTensor& planar, const TangentVector& transversal);
    /// Components X_{ia} = a_i . (M a_a); M must map the tangent plane and
    /// kill n0 for the embedding to be faithful.
    static ShellTensor from_embedding(const FramePtr& f, const Eigen::Matrix3d& m);

    const Eigen::Matrix<double, 3, 2>& cov() const { return x_; }
    const FramePtr& frame() const { return f_; }

    PlanarTensor planar() const { return {f_, x_.topRows<2>()}; }
    TangentVector transversal() const { return {f_, x_.bottomRows<1>().transpose()}; }
    double trace() const { return (f_->metric_inv.cwiseProduct(x_.topRows<2>())).sum(); }
    double ddot(const ShellTensor& o) const;
    double norm2() const { return ddot(*this); }
    /// Right composition with a planar tensor: (X S)_{ia} = X_{ig} a^{gd} S_{da}.
    ShellTensor compose(const PlanarTensor& o) const;
    Eigen::Matrix3d embed() const;

    ShellTensor operator+(const ShellTensor& o) const;
    ShellTensor operator-(const ShellTensor& o) const;
    ShellTensor operator*(double s) const { return {f_, s * x_}; }

private:
    FramePtr f_;
    Eigen::Matrix<double, 3, 2> x_ = Eigen::Matrix<double, 3, 2>::Zero();
};

/// Splits X into planar and transversal parts (recomposition is exact).
std::pair<PlanarTensor, TangentVector> decompose(const ShellTensor& x);

/// c X, the alternator acting on the left; the result is planar
/// (transversal row zero) and c(cX) = -aX.
ShellTensor alternator_apply(const ShellTensor& x);

void require_same_frame(const FramePtr& a, const FramePtr& b);

} // namespace cosshell

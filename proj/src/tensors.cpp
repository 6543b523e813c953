#include "cosshell/tensors.hpp"

namespace cosshell {

void require_same_frame(const FramePtr& a, const FramePtr& b)
{
    if (!a || !b || a->id != b->id)
        throw FrameMismatch("tensor operands live on different frames");
}

double TangentVector::dot(const TangentVector& o) const
{
    require_same_frame(f_, o.f_);
    return v_.dot(f_->metric_inv * o.v_);
}

TangentVector TangentVector::operator+(const TangentVector& o) const
{
    require_same_frame(f_, o.f_);
    return {f_, v_ + o.v_};
}

PlanarTensor PlanarTensor::alternator(const FramePtr& f)
{
    Eigen::Matrix2d c;
    c << 0.0, f->area_density, -f->area_density, 0.0;
    return {f, c};
}

double PlanarTensor::ddot(const PlanarTensor& o) const
{
    require_same_frame(f_, o.f_);
    return ((f_->metric_inv * t_ * f_->metric_inv).cwiseProduct(o.t_)).sum();
}

PlanarTensor PlanarTensor::compose(const PlanarTensor& o) const
{
    require_same_frame(f_, o.f_);
    return {f_, t_ * f_->metric_inv * o.t_};
}

Eigen::Matrix3d PlanarTensor::embed() const
{
    Eigen::Matrix<double, 3, 2> dual;
    dual.col(0) = f_->au1;
    dual.col(1) = f_->au2;
    return dual * t_ * dual.transpose();
}

PlanarTensor PlanarTensor::operator+(const PlanarTensor& o) const
{
    require_same_frame(f_, o.f_);
    return {f_, t_ + o.t_};
}

PlanarTensor PlanarTensor::operator-(const PlanarTensor& o) const
{
    require_same_frame(f_, o.f_);
    return {f_, t_ - o.t_};
}

ShellTensor ShellTensor::identity(const FramePtr& f)
{
    Eigen::Matrix<double, 3, 2> x = Eigen::Matrix<double, 3, 2>::Zero();
    x.topRows<2>() = f->metric;
    return {f, x};
}

ShellTensor ShellTensor::from_parts(const PlanarTensor& planar, const TangentVector& transversal)
{
    require_same_frame(planar.frame(), transversal.frame());
    Eigen::Matrix<double, 3, 2> x;
    x.topRows<2>() = planar.cov();
    x.bottomRows<1>() = transversal.cov().transpose();
    return {planar.frame(), x};
}

ShellTensor ShellTensor::from_embedding(const FramePtr& f, const Eigen::Matrix3d& m)
{
    Eigen::Matrix3d basis;
    basis.col(0) = f->a1;
    basis.col(1) = f->a2;
    basis.col(2) = f->n0;
    const Eigen::Matrix3d comps = basis.transpose() * m * basis;
    Eigen::Matrix<double, 3, 2> x = comps.leftCols<2>();
    return {f, x};
}

double ShellTensor::ddot(const ShellTensor& o) const
{
    require_same_frame(f_, o.f_);
    const Eigen::Matrix2d& gi = f_->metric_inv;
    const double planar = ((gi * x_.topRows<2>() * gi).cwiseProduct(o.x_.topRows<2>())).sum();
    const Eigen::Vector2d va = x_.bottomRows<1>().transpose(), vb = o.x_.bottomRows<1>().transpose();
    return planar + va.dot(gi * vb);
}

ShellTensor ShellTensor::compose(const PlanarTensor& o) const
{
    require_same_frame(f_, o.frame());
    return {f_, x_ * f_->metric_inv * o.cov()};
}

Eigen::Matrix3d ShellTensor::embed() const
{
    Eigen::Matrix3d dual3;
    dual3.col(0) = f_->au1;
    dual3.col(1) = f_->au2;
    dual3.col(2) = f_->n0;
    Eigen::Matrix<double, 3, 2> dual2;
    dual2.col(0) = f_->au1;
    dual2.col(1) = f_->au2;
    return dual3 * x_ * dual2.transpose();
}

ShellTensor ShellTensor::operator+(const ShellTensor& o) const
{
    require_same_frame(f_, o.f_);
    return {f_, x_ + o.x_};
}

ShellTensor ShellTensor::operator-(const ShellTensor& o) const
{
    require_same_frame(f_, o.f_);
    return {f_, x_ - o.x_};
}

std::pair<PlanarTensor, TangentVector> decompose(const ShellTensor& x)
{
    return {x.planar(), x.transversal()};
}

ShellTensor alternator_apply(const ShellTensor& x)
{
    const FramePtr& f = x.frame();
    const Eigen::Matrix2d c = PlanarTensor::alternator(f).cov();
    Eigen::Matrix<double, 3, 2> out = Eigen::Matrix<double, 3, 2>::Zero();
    out.topRows<2>() = c * f->metric_inv * x.cov().topRows<2>();
    return {f, out};
}

} // namespace cosshell

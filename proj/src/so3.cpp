#include "cosshell/so3.hpp"

#include <cmath>

#include "cosshell/errors.hpp"

namespace cosshell::so3 {

Eigen::Matrix3d skew(const Eigen::Vector3d& w)
{
    Eigen::Matrix3d s;
    s << 0.0, -w.z(), w.y(),
         w.z(), 0.0, -w.x(),
        -w.y(), w.x(), 0.0;
    return s;
}

Eigen::Vector3d axl(const Eigen::Matrix3d& a)
{
    return 0.5 * Eigen::Vector3d(a(2, 1) - a(1, 2), a(0, 2) - a(2, 0), a(1, 0) - a(0, 1));
}

Eigen::Vector3d axl_checked(const Eigen::Matrix3d& a, double tol)
{
    const double sym_norm = (a + a.transpose()).norm();
    if (sym_norm > tol * a.norm())
        throw NotSkew("axl: argument is not skew-symmetric");
    return axl(a);
}

Eigen::Matrix3d exp(const Eigen::Vector3d& w)
{
    const double theta2 = w.squaredNorm();
    const double theta = std::sqrt(theta2);
    const Eigen::Matrix3d s = skew(w);
    double c1, c2; // sin(t)/t, (1-cos(t))/t^2
    if (theta < 1e-6) {
        c1 = 1.0 - theta2 / 6.0;
        c2 = 0.5 - theta2 / 24.0;
    } else {
        c1 = std::sin(theta) / theta;
        c2 = (1.0 - std::cos(theta)) / theta2;
    }
    return Eigen::Matrix3d::Identity() + c1 * s + c2 * s * s;
}

Eigen::Vector3d log(const Eigen::Matrix3d& r)
{
    double ct = 0.5 * (r.trace() - 1.0);
    ct = std::min(1.0, std::max(-1.0, ct));
    const double theta = std::acos(ct);
    const Eigen::Vector3d w(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
    if (theta < 1e-6)
        return 0.5 * (1.0 + theta * theta / 6.0) * w;
    if (theta > M_PI - 1e-6) {
        // near pi the vector part degenerates; recover the axis from R + I
        const Eigen::Matrix3d b = 0.5 * (r + Eigen::Matrix3d::Identity());
        Eigen::Vector3d axis = b.diagonal().cwiseMax(0.0).cwiseSqrt();
        int k;
        b.diagonal().maxCoeff(&k);
        if (axis[k] > 0) {
            for (int i = 0; i < 3; ++i)
                if (i != k) axis[i] = b(k, i) / axis[k] * (axis[i] < 0 ? -1.0 : 1.0);
        }
        axis.normalize();
        if (w.dot(axis) < 0) axis = -axis;
        return theta * axis;
    }
    return 0.5 * theta / std::sin(theta) * w;
}

Eigen::Matrix3d left_jacobian(const Eigen::Vector3d& w)
{
    const double theta2 = w.squaredNorm();
    const double theta = std::sqrt(theta2);
    const Eigen::Matrix3d s = skew(w);
    double c1, c2; // (1-cos t)/t^2, (t - sin t)/t^3
    if (theta < 1e-6) {
        c1 = 0.5 - theta2 / 24.0;
        c2 = 1.0 / 6.0 - theta2 / 120.0;
    } else {
        c1 = (1.0 - std::cos(theta)) / theta2;
        c2 = (theta - std::sin(theta)) / (theta2 * theta);
    }
    return Eigen::Matrix3d::Identity() + c1 * s + c2 * s * s;
}

Eigen::Matrix3d left_jacobian_inv(const Eigen::Vector3d& w)
{
    const double theta2 = w.squaredNorm();
    const double theta = std::sqrt(theta2);
    const Eigen::Matrix3d s = skew(w);
    double c2;
    if (theta < 1e-4) {
        c2 = 1.0 / 12.0 + theta2 / 720.0;
    } else {
        c2 = (1.0 - 0.5 * theta * std::sin(theta) / (1.0 - std::cos(theta))) / theta2;
    }
    return Eigen::Matrix3d::Identity() - 0.5 * s + c2 * s * s;
}

bool is_rotation(const Eigen::Matrix3d& r, double tol)
{
    return (r.transpose() * r - Eigen::Matrix3d::Identity()).norm() <= tol && r.determinant() > 0.0;
}

Eigen::Quaterniond exp_quat(const Eigen::Vector3d& w)
{
    const double theta = w.norm();
    if (theta < 1e-12)
        return Eigen::Quaterniond(1.0, 0.5 * w.x(), 0.5 * w.y(), 0.5 * w.z()).normalized();
    const double half = 0.5 * theta;
    const Eigen::Vector3d axis = w / theta;
    const double s = std::sin(half);
    return Eigen::Quaterniond(std::cos(half), s * axis.x(), s * axis.y(), s * axis.z());
}

} // namespace cosshell::so3

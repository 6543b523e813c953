#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace cosshell::so3 {

/// Skew-symmetric matrix of w, so that skew(w) x = w × x.
Eigen::Matrix3d skew(const Eigen::Vector3d& w);

/// Axial vector of the skew part of A: axl(skew_part(A)).
/// For skew A it satisfies A x = axl(A) × x.
Eigen::Vector3d axl(const Eigen::Matrix3d& a);

/// Axial vector with a skewness precondition: throws NotSkew if
/// ||A + A^T|| > tol ||A||.
Eigen::Vector3d axl_checked(const Eigen::Matrix3d& a, double tol = 1e-10);

/// exp(skew(w)) by Rodrigues' formula, series for small angles.
Eigen::Matrix3d exp(const Eigen::Vector3d& w);

/// Rotation vector of R (inverse of exp), valid for angles < pi.
Eigen::Vector3d log(const Eigen::Matrix3d& r);

/// Left Jacobian J_l(w): d/dt exp(w(t)) = skew(J_l w') exp(w).
Eigen::Matrix3d left_jacobian(const Eigen::Vector3d& w);

/// Inverse of the left Jacobian.
Eigen::Matrix3d left_jacobian_inv(const Eigen::Vector3d& w);

bool is_rotation(const Eigen::Matrix3d& r, double tol = 1e-10);

/// Quaternion for exp(skew(w)).
Eigen::Quaterniond exp_quat(const Eigen::Vector3d& w);

} // namespace cosshell::so3

#include <doctest.h>

#include <random>

#include "cosshell/so3.hpp"
#include "cosshell/tensors.hpp"
#include "cosshell/validate.hpp"

using namespace cosshell;

namespace {

FramePtr flat_frame()
{
    return make_frame({1, 0, 0}, {0, 1, 0}, Eigen::Matrix2d::Zero());
}

} // namespace

TEST_CASE("decompose splits planar and transversal parts")
{
    const FramePtr f = flat_frame();
    // X = n0 (x) a^1
    Eigen::Matrix<double, 3, 2> x = Eigen::Matrix<double, 3, 2>::Zero();
    x(2, 0) = 1.0;
    const ShellTensor t(f, x);
    const auto [planar, trans] = decompose(t);
    CHECK(planar.norm2() == doctest::Approx(0.0));
    CHECK((trans.embed() - Eigen::Vector3d(1, 0, 0)).norm() == doctest::Approx(0.0));

    const ShellTensor a = ShellTensor::identity(f);
    const auto [pa, ta] = decompose(a);
    CHECK((pa.cov() - f->metric).norm() == doctest::Approx(0.0));
    CHECK(ta.norm2() == doctest::Approx(0.0));
}

TEST_CASE("decomposition preserves the norm on curved frames")
{
    std::mt19937_64 rng(42);
    for (int t = 0; t < 50; ++t) {
        const FramePtr f = random_frame(rng);
        const ShellTensor x = random_shell_tensor(rng, f);
        CHECK(x.norm2() ==
              doctest::Approx(x.planar().norm2() + x.transversal().norm2()).epsilon(1e-12));
        const ShellTensor rebuilt = ShellTensor::from_parts(x.planar(), x.transversal());
        CHECK((rebuilt.cov() - x.cov()).norm() == doctest::Approx(0.0));
    }
}

TEST_CASE("planar part operations")
{
    const FramePtr f = flat_frame();
    const PlanarTensor a = PlanarTensor::identity(f);
    CHECK(a.trace() == doctest::Approx(2.0));
    CHECK(a.dev_s().norm2() == doctest::Approx(0.0));

    Eigen::Matrix2d sk;
    sk << 0, 1, -1, 0;
    const PlanarTensor skew_t(f, sk);
    CHECK(skew_t.sym().norm2() == doctest::Approx(0.0));
    CHECK(skew_t.trace() == doctest::Approx(0.0));

    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        const FramePtr fr = random_frame(rng);
        const PlanarTensor p = random_planar_tensor(rng, fr);
        CHECK(p.sym().norm2() ==
              doctest::Approx(p.sym().dev_s().norm2() + 0.5 * p.trace() * p.trace()).epsilon(1e-12));
    }
}

TEST_CASE("axial vector on basis elements and the cross identity")
{
    CHECK(so3::axl(Eigen::Matrix3d::Zero()).norm() == doctest::Approx(0.0));
    Eigen::Matrix3d w = Eigen::Matrix3d::Zero();
    w(2, 1) = 1.0;
    w(1, 2) = -1.0;
    CHECK((so3::axl_checked(w) - Eigen::Vector3d(1, 0, 0)).norm() == doctest::Approx(0.0));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(-1, 1);
    for (int t = 0; t < 20; ++t) {
        const Eigen::Vector3d v{uni(rng), uni(rng), uni(rng)};
        const Eigen::Matrix3d sk = so3::skew(v);
        for (int q = 0; q < 10; ++q) {
            const Eigen::Vector3d z{uni(rng), uni(rng), uni(rng)};
            CHECK((sk * z - so3::axl_checked(sk).cross(z)).norm() < 1e-12);
        }
    }

    Eigen::Matrix3d not_skew = Eigen::Matrix3d::Identity();
    CHECK_THROWS_AS(so3::axl_checked(not_skew), NotSkew);
}

TEST_CASE("alternator action and involution")
{
    const FramePtr f = flat_frame();
    // X = a^1 (x) a^1; the alternator rotates a1 to -a2 (clockwise about n0)
    Eigen::Matrix<double, 3, 2> x = Eigen::Matrix<double, 3, 2>::Zero();
    x(0, 0) = 1.0;
    const ShellTensor t(f, x);
    const ShellTensor ct = alternator_apply(t);
    Eigen::Matrix<double, 3, 2> want = Eigen::Matrix<double, 3, 2>::Zero();
    want(1, 0) = -1.0;
    CHECK((ct.cov() - want).norm() == doctest::Approx(0.0));

    CHECK(alternator_apply(ShellTensor::zero(f)).norm2() == doctest::Approx(0.0));

    std::mt19937_64 rng(11);
    for (int q = 0; q < 50; ++q) {
        const FramePtr fr = random_frame(rng);
        const ShellTensor xr = random_shell_tensor(rng, fr);
        const ShellTensor ccx = alternator_apply(alternator_apply(xr));
        const ShellTensor ax = ShellTensor::from_parts(xr.planar(), TangentVector(fr, {0, 0}));
        CHECK(std::sqrt((ccx + ax).norm2()) < 1e-12 * std::max(1.0, std::sqrt(xr.norm2())));
    }
}

TEST_CASE("mixed-frame operations are rejected")
{
    std::mt19937_64 rng(5);
    const FramePtr f1 = random_frame(rng);
    const FramePtr f2 = random_frame(rng);
    const ShellTensor a = random_shell_tensor(rng, f1);
    const ShellTensor b = random_shell_tensor(rng, f2);
    CHECK_THROWS_AS(a.ddot(b), FrameMismatch);
    CHECK_THROWS_AS(a + b, FrameMismatch);
    CHECK_THROWS_AS(a.compose(PlanarTensor::identity(f2)), FrameMismatch);
}

TEST_CASE("scalar products agree with the ambient embedding")
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
        const FramePtr f = random_frame(rng);
        const ShellTensor a = random_shell_tensor(rng, f);
        const ShellTensor b = random_shell_tensor(rng, f);
        CHECK(a.ddot(b) ==
              doctest::Approx((a.embed().transpose() * b.embed()).trace()).epsilon(1e-12));
        CHECK(a.trace() == doctest::Approx(a.embed().trace()).epsilon(1e-12));
        // embedding round trip
        const ShellTensor back = ShellTensor::from_embedding(f, a.embed());
        CHECK((back.cov() - a.cov()).norm() < 1e-12 * std::max(1.0, a.cov().norm()));
    }
}

TEST_CASE("rotation exp/log and jacobians")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-1.2, 1.2);
    for (int t = 0; t < 30; ++t) {
        const Eigen::Vector3d w{uni(rng), uni(rng), uni(rng)};
        const Eigen::Matrix3d r = so3::exp(w);
        CHECK(so3::is_rotation(r));
        CHECK((so3::log(r) - w).norm() < 1e-10);
        CHECK((so3::exp_quat(w).toRotationMatrix() - r).norm() < 1e-12);
        CHECK((so3::left_jacobian(w) * so3::left_jacobian_inv(w) - Eigen::Matrix3d::Identity()).norm() <
              1e-10);
        // J_l maps rotation-vector rates to spatial angular velocity
        const double dt = 1e-7;
        const Eigen::Vector3d wd{uni(rng), uni(rng), uni(rng)};
        const Eigen::Matrix3d r1 = so3::exp(w + dt * wd);
        const Eigen::Matrix3d omega_hat = (r1 - r) / dt * r.transpose();
        CHECK((so3::axl(omega_hat) - so3::left_jacobian(w) * wd).norm() < 1e-5);
    }
}

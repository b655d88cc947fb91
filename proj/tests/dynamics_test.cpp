#include "pumatune/dynamics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>
#include <Eigen/LU>
#include <gtest/gtest.h>

#include "pumatune/errors.hpp"
#include "pumatune/rk4.hpp"
#include "test_support.hpp"

namespace pumatune {
namespace {

using testing::puma;
using testing::random_joints;
using Eigen::Matrix3d;
using Eigen::Vector3d;

// ---------------------------------------------------------------------------
// Independent oracle: forward kinematics + geometric Jacobians give
//   A(q) = sum_i m_i Jv_i^T Jv_i + Jw_i^T R_i I_i R_i^T Jw_i + diag(rotor)
//   g(q) = dV/dq,  V = -sum_i m_i g . p_ci
// Nothing here shares code with the Newton-Euler recursion.

struct LinkPose {
  Matrix3d rotation;  // base <- link frame i
  Vector3d origin;    // O_i in base
};

std::array<LinkPose, kJoints + 1> forward_kinematics(const RobotModel& model, const JointVector& q) {
  std::array<LinkPose, kJoints + 1> poses;
  poses[0] = {Matrix3d::Identity(), Vector3d::Zero()};
  for (int i = 0; i < kJoints; ++i) {
    const DhRow& dh = model.dh(i);
    Eigen::Affine3d t = Eigen::Affine3d::Identity();
    t.rotate(Eigen::AngleAxisd(q[i], Vector3d::UnitZ()));
    t.translate(Vector3d(0, 0, dh.d));
    t.translate(Vector3d(dh.a, 0, 0));
    t.rotate(Eigen::AngleAxisd(dh.alpha, Vector3d::UnitX()));
    const LinkPose& prev = poses[static_cast<std::size_t>(i)];
    poses[static_cast<std::size_t>(i) + 1] = {prev.rotation * t.linear(), prev.origin + prev.rotation * t.translation()};
  }
  return poses;
}

JointMatrix lagrangian_mass_matrix(const RobotModel& model, const JointVector& q) {
  const auto poses = forward_kinematics(model, q);
  JointMatrix a = JointMatrix::Zero();
  for (int i = 0; i < kJoints; ++i) {
    const LinkPose& link = poses[static_cast<std::size_t>(i) + 1];
    const LinkInertia& inertia = model.link(i);
    const Vector3d com = link.origin + link.rotation * inertia.com;
    Eigen::Matrix<double, 3, kJoints> jv = Eigen::Matrix<double, 3, kJoints>::Zero();
    Eigen::Matrix<double, 3, kJoints> jw = Eigen::Matrix<double, 3, kJoints>::Zero();
    for (int j = 0; j <= i; ++j) {
      const LinkPose& base = poses[static_cast<std::size_t>(j)];
      const Vector3d axis = base.rotation.col(2);
      jw.col(j) = axis;
      jv.col(j) = axis.cross(com - base.origin);
    }
    const Matrix3d world_inertia = link.rotation * inertia.inertia * link.rotation.transpose();
    a += inertia.mass * jv.transpose() * jv + jw.transpose() * world_inertia * jw;
    a(i, i) += inertia.rotor_inertia;
  }
  return a;
}

double potential_energy(const RobotModel& model, const JointVector& q) {
  const auto poses = forward_kinematics(model, q);
  double v = 0.0;
  for (int i = 0; i < kJoints; ++i) {
    const LinkPose& link = poses[static_cast<std::size_t>(i) + 1];
    const Vector3d com = link.origin + link.rotation * model.link(i).com;
    v -= model.link(i).mass * model.gravity().dot(com);
  }
  return v;
}

JointVector potential_gradient(const RobotModel& model, const JointVector& q) {
  const double h = 1e-6;
  JointVector g;
  for (int j = 0; j < kJoints; ++j) {
    const JointVector dq = JointVector::Unit(j) * h;
    g[j] = (potential_energy(model, q + dq) - potential_energy(model, q - dq)) / (2 * h);
  }
  return g;
}

// ---------------------------------------------------------------------------

TEST(RigidBodyOracle, MassMatrixMatchesJacobianFormulation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const JointVector q = random_joints(rng, -M_PI, M_PI);
    const JointMatrix expected = lagrangian_mass_matrix(puma(), q);
    EXPECT_LT((mass_matrix(puma(), q) - expected).cwiseAbs().maxCoeff(), 1e-12 * (1 + expected.norm()));
  }
}

TEST(RigidBodyOracle, GravityTorqueIsPotentialGradient) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const JointVector q = random_joints(rng, -M_PI, M_PI);
    EXPECT_LT((gravity_torques(puma(), q) - potential_gradient(puma(), q)).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(InverseDynamics, AtRestGivesGravityTorque) {
  const JointVector q = puma().home();
  const JointVector zero = JointVector::Zero();
  EXPECT_EQ(inverse_dynamics(puma(), q, zero, zero), gravity_torques(puma(), q));
  EXPECT_GT(gravity_torques(puma(), q).norm(), 1.0);
}

TEST(InverseDynamics, UnitAccelerationWithoutGravityGivesMassMatrixColumn) {
  const RobotModel weightless = puma().with_gravity(Vector3d::Zero());
  std::mt19937_64 rng(3);
  const JointVector q = random_joints(rng, -M_PI, M_PI);
  const JointMatrix a = mass_matrix(puma(), q);
  for (int j = 0; j < kJoints; ++j) {
    const JointVector col = inverse_dynamics(weightless, q, JointVector::Zero(), JointVector::Unit(j));
    EXPECT_EQ(col, a.col(j)) << "column " << j;
  }
}

TEST(InverseDynamics, DecomposesIntoMassMatrixAndBias) {
  std::mt19937_64 rng(4);
  const JointVector q = puma().home();
  for (int trial = 0; trial < 20; ++trial) {
    const JointVector qd = random_joints(rng, -1, 1);
    const JointVector qdd = random_joints(rng, -1, 1);
    const JointVector assembled = mass_matrix(puma(), q) * qdd + bias_torques(puma(), q, qd);
    EXPECT_LT((inverse_dynamics(puma(), q, qd, qdd) - assembled).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(InverseDynamics, RejectsNonFiniteInput) {
  JointVector bad = JointVector::Zero();
  bad[2] = std::numeric_limits<double>::quiet_NaN();
  const JointVector zero = JointVector::Zero();
  EXPECT_THROW(inverse_dynamics(puma(), bad, zero, zero), InvalidInput);
  EXPECT_THROW(inverse_dynamics(puma(), zero, bad, zero), InvalidInput);
  EXPECT_THROW(inverse_dynamics(puma(), zero, zero, bad), InvalidInput);
  bad[2] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(forward_dynamics(puma(), zero, zero, bad), InvalidInput);
}

TEST(MassMatrix, SymmetricAndPositiveDefinite) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const JointVector q = random_joints(rng, -M_PI, M_PI);
    const JointMatrix a = mass_matrix(puma(), q);
    const double norm_inf = a.cwiseAbs().rowwise().sum().maxCoeff();
    const double asym_inf = (a - a.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
    EXPECT_LT(asym_inf / norm_inf, 1e-9);
    Eigen::SelfAdjointEigenSolver<JointMatrix> eig(a);
    EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
    EXPECT_EQ(Eigen::LLT<JointMatrix>(a).info(), Eigen::Success);
  }
}

TEST(MassMatrix, ProductMatchesWeightlessInverseDynamics) {
  const RobotModel weightless = puma().with_gravity(Vector3d::Zero());
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const JointVector q = random_joints(rng, -M_PI, M_PI);
    const JointVector v = random_joints(rng, -3, 3);
    const JointVector direct = inverse_dynamics(weightless, q, JointVector::Zero(), v);
    EXPECT_LT((mass_matrix(puma(), q) * v - direct).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(BiasTorques, ZeroVelocityIsGravity) {
  std::mt19937_64 rng(7);
  const JointVector q = random_joints(rng, -M_PI, M_PI);
  EXPECT_EQ(bias_torques(puma(), q, JointVector::Zero()), gravity_torques(puma(), q));
}

TEST(BiasTorques, QuadraticInVelocity) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const JointVector q = random_joints(rng, -M_PI, M_PI);
    const JointVector qd = random_joints(rng, -2, 2);
    const JointVector g = gravity_torques(puma(), q);
    const JointVector velocity_part = bias_torques(puma(), q, qd) - g;
    for (double alpha : {2.0, -0.5, 3.0}) {
      const JointVector scaled = bias_torques(puma(), q, alpha * qd) - g;
      EXPECT_LT((scaled - alpha * alpha * velocity_part).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(BiasTorques, MatchesZeroAccelerationInverseDynamics) {
  std::mt19937_64 rng(9);
  const JointVector q = random_joints(rng, -M_PI, M_PI);
  const JointVector qd = random_joints(rng, -2, 2);
  EXPECT_EQ(bias_torques(puma(), q, qd), inverse_dynamics(puma(), q, qd, JointVector::Zero()));
}

TEST(ForwardDynamics, GravityCompensationHoldsStill) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const JointVector q = random_joints(rng, -M_PI, M_PI);
    const JointVector qdd = forward_dynamics(puma(), q, JointVector::Zero(), gravity_torques(puma(), q));
    EXPECT_LT(qdd.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ForwardDynamics, InvertsInverseDynamics) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const JointVector q = random_joints(rng, -M_PI, M_PI);
    const JointVector qd = random_joints(rng, -2, 2);
    const JointVector qdd = random_joints(rng, -5, 5);
    const JointVector tau = inverse_dynamics(puma(), q, qd, qdd);
    ASSERT_LT((forward_dynamics(puma(), q, qd, tau) - qdd).cwiseAbs().maxCoeff(), 1e-8) << "trial " << trial;
  }
}

TEST(ForwardDynamics, FreeFallAtHomeMatchesDenseSolve) {
  const JointVector q = puma().home();
  const JointVector zero = JointVector::Zero();
  const JointMatrix a = mass_matrix(puma(), q);
  const JointVector expected = -a.partialPivLu().solve(gravity_torques(puma(), q));
  EXPECT_LT((forward_dynamics(puma(), q, zero, zero) - expected).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ForwardDynamics, SingularMassMatrixIsReported) {
  // Every link massless and without inertia: A(q) = 0.
  std::array<DhRow, kJoints> dh;
  std::array<LinkInertia, kJoints> links;
  for (int j = 0; j < kJoints; ++j) dh[static_cast<std::size_t>(j)] = puma().dh(j);
  const RobotModel empty("massless", dh, links, Vector3d(0, 0, -9.81));
  const JointVector zero = JointVector::Zero();
  EXPECT_THROW(forward_dynamics(empty, zero, zero, zero), SingularConfiguration);
}

TEST(PowerBalance, KineticEnergyRateEqualsNonGravitationalPower) {
  // Under constant torque, d/dt(1/2 qd^T A qd) = qd^T (tau - g(q)).
  std::mt19937_64 rng(14);
  using State = Eigen::Matrix<double, 12, 1>;
  for (int trial = 0; trial < 20; ++trial) {
    const JointVector q = random_joints(rng, -M_PI, M_PI);
    const JointVector qd = random_joints(rng, -2, 2);
    const JointVector tau = random_joints(rng, -20, 20);
    auto f = [&](double, const State& x) {
      State dx;
      dx << x.tail<6>(), forward_dynamics(puma(), x.head<6>(), x.tail<6>(), tau);
      return dx;
    };
    State x0;
    x0 << q, qd;
    const double h = 1e-4;
    const State ahead = rk4_step(f, 0.0, x0, h);
    const State behind = rk4_step(f, 0.0, x0, -h);
    const double rate = (kinetic_energy(puma(), ahead.head<6>(), ahead.tail<6>()) -
                         kinetic_energy(puma(), behind.head<6>(), behind.tail<6>())) / (2 * h);
    const double power = qd.dot(tau - gravity_torques(puma(), q));
    EXPECT_NEAR(rate, power, 1e-3 * std::max(1.0, std::abs(power))) << "trial " << trial;
  }
}

}  // namespace
}  // namespace pumatune

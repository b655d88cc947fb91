#include "pumatune/dynamics.hpp"

#include <array>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Geometry>

#include "pumatune/errors.hpp"

namespace pumatune {
namespace {

using Eigen::Matrix3d;
using Eigen::Vector3d;

// Recursive Newton-Euler over standard DH frames. Frame i sits at the distal end of
// link i; joint i rotates about z_{i-1}. Every link quantity is expressed in its own
// frame. Gravity enters as an upward acceleration of the base.
JointVector rne(const RobotModel& model, const JointVector& q, const JointVector& qd,
                const JointVector& qdd, const Vector3d& gravity) {
  const Vector3d z0 = Vector3d::UnitZ();

  std::array<Matrix3d, kJoints> rot;     // ^{i-1}R_i
  std::array<Vector3d, kJoints> offset;  // O_{i-1} -> O_i, in frame i
  std::array<Vector3d, kJoints> w, wd, force, moment;

  Vector3d w_prev = Vector3d::Zero();
  Vector3d wd_prev = Vector3d::Zero();
  Vector3d vd_prev = -gravity;

  for (int i = 0; i < kJoints; ++i) {
    const DhRow& dh = model.dh(i);
    const double ct = std::cos(q[i]), st = std::sin(q[i]);
    const double ca = std::cos(dh.alpha), sa = std::sin(dh.alpha);
    rot[i] << ct, -st * ca, st * sa,
              st, ct * ca, -ct * sa,
              0.0, sa, ca;
    offset[i] = Vector3d(dh.a, dh.d * sa, dh.d * ca);

    const Matrix3d rt = rot[i].transpose();
    w[i] = rt * (w_prev + z0 * qd[i]);
    wd[i] = rt * (wd_prev + z0 * qdd[i] + w_prev.cross(z0 * qd[i]));
    const Vector3d vd = rt * vd_prev + wd[i].cross(offset[i]) + w[i].cross(w[i].cross(offset[i]));

    const LinkInertia& link = model.link(i);
    const Vector3d vc = vd + wd[i].cross(link.com) + w[i].cross(w[i].cross(link.com));
    force[i] = link.mass * vc;
    moment[i] = link.inertia * wd[i] + w[i].cross(link.inertia * w[i]);

    w_prev = w[i];
    wd_prev = wd[i];
    vd_prev = vd;
  }

  JointVector tau;
  Vector3d f = Vector3d::Zero();  // force of link i+1 on link i, frame i+1
  Vector3d n = Vector3d::Zero();  // moment of link i+1 on link i about O_i, frame i+1
  for (int i = kJoints - 1; i >= 0; --i) {
    const Matrix3d next_rot = (i + 1 < kJoints) ? rot[i + 1] : Matrix3d::Identity();
    const Vector3d f_child = next_rot * f;
    const Vector3d& com = model.link(i).com;
    n = next_rot * n + offset[i].cross(f_child) + (offset[i] + com).cross(force[i]) + moment[i];
    f = f_child + force[i];
    // joint axis z_{i-1} seen from frame i
    const Vector3d axis = rot[i].transpose() * z0;
    tau[i] = n.dot(axis) + model.link(i).rotor_inertia * qdd[i];
  }
  return tau;
}

void check_inputs(const JointVector& q, const JointVector& qd) {
  require_finite(q, "joint positions");
  require_finite(qd, "joint velocities");
}

}  // namespace

JointVector inverse_dynamics(const RobotModel& model, const JointVector& q, const JointVector& qd,
                             const JointVector& qdd) {
  check_inputs(q, qd);
  require_finite(qdd, "joint accelerations");
  return rne(model, q, qd, qdd, model.gravity());
}

JointMatrix mass_matrix(const RobotModel& model, const JointVector& q) {
  require_finite(q, "joint positions");
  const JointVector zero = JointVector::Zero();
  JointMatrix a;
  for (int j = 0; j < kJoints; ++j) {
    a.col(j) = rne(model, q, zero, JointVector::Unit(j), Vector3d::Zero());
  }
  return a;
}

JointVector bias_torques(const RobotModel& model, const JointVector& q, const JointVector& qd) {
  check_inputs(q, qd);
  return rne(model, q, qd, JointVector::Zero(), model.gravity());
}

JointVector gravity_torques(const RobotModel& model, const JointVector& q) {
  return bias_torques(model, q, JointVector::Zero());
}

JointVector forward_dynamics(const RobotModel& model, const JointVector& q, const JointVector& qd,
                             const JointVector& tau) {
  check_inputs(q, qd);
  require_finite(tau, "joint torques");
  const JointMatrix a = mass_matrix(model, q);
  const Eigen::LLT<JointMatrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw SingularConfiguration("mass matrix is not positive definite at this configuration");
  }
  JointVector qdd = llt.solve(tau - bias_torques(model, q, qd));
  if (!qdd.allFinite()) throw SingularConfiguration("mass matrix solve produced non-finite accelerations");
  return qdd;
}

double kinetic_energy(const RobotModel& model, const JointVector& q, const JointVector& qd) {
  require_finite(qd, "joint velocities");
  return 0.5 * qd.dot(mass_matrix(model, q) * qd);
}

}  // namespace pumatune

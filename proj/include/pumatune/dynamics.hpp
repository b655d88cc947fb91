#pragma once

#include "pumatune/joint_vector.hpp"
#include "pumatune/robot_model.hpp"

namespace pumatune {

/// Joint torques that realise the motion (q, qd, qdd), computed by recursive Newton-Euler:
/// tau = A(q) qdd + h(q, qd) with h the Coriolis, centrifugal and gravity torques.
JointVector inverse_dynamics(const RobotModel& model, const JointVector& q, const JointVector& qd,
                             const JointVector& qdd);

/// Joint-space inertia matrix A(q); column j is the torque response to a unit
/// acceleration of joint j with gravity and velocity removed.
JointMatrix mass_matrix(const RobotModel& model, const JointVector& q);

/// h(q, qd) = inverse_dynamics(q, qd, 0). Velocity-product and gravity terms combined.
JointVector bias_torques(const RobotModel& model, const JointVector& q, const JointVector& qd);

/// g(q) = bias_torques(q, 0).
JointVector gravity_torques(const RobotModel& model, const JointVector& q);

/// Solves A(q) qdd = tau - h(q, qd) by Cholesky factorisation.
/// Throws SingularConfiguration if A(q) is not numerically positive definite.
JointVector forward_dynamics(const RobotModel& model, const JointVector& q, const JointVector& qd,
                             const JointVector& tau);

/// Kinetic energy 0.5 qd^T A(q) qd.
double kinetic_energy(const RobotModel& model, const JointVector& q, const JointVector& qd);

}  // namespace pumatune

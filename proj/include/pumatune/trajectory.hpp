#pragma once

#include "pumatune/joint_vector.hpp"

namespace pumatune {

/// Point-to-point joint motion with quintic time scaling, at rest at both ends.
class TrajectorySpec {
 public:
  /// Poses in radians, duration in seconds. Throws InvalidInput unless duration > 0
  /// and both poses are finite.
  TrajectorySpec(JointVector q_initial, JointVector q_final, double duration);

  const JointVector& q_initial() const { return q_initial_; }
  const JointVector& q_final() const { return q_final_; }
  double duration() const { return duration_; }
  JointVector displacement() const { return q_final_ - q_initial_; }

 private:
  JointVector q_initial_;
  JointVector q_final_;
  double duration_;
};

struct DesiredState {
  JointVector q;
  JointVector qd;
  JointVector qdd;
};

/// r(t) = 10 s^3 - 15 s^4 + 6 s^5 with s = t / duration. Throws OutOfRange outside [0, duration].
double scaling(double t, double duration);
/// dr/dt
double scaling_rate(double t, double duration);
/// d^2r/dt^2
double scaling_accel(double t, double duration);

/// q_d = q_i + r(t) D together with its exact time derivatives.
DesiredState desired_state(const TrajectorySpec& spec, double t);

}  // namespace pumatune

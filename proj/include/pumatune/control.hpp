#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "pumatune/joint_vector.hpp"
#include "pumatune/robot_model.hpp"
#include "pumatune/trajectory.hpp"

namespace pumatune {

/// Diagonal PD gains of the computed-torque law. kp in 1/s^2, kd in 1/s.
struct GainSet {
  JointVector kp = JointVector::Zero();
  JointVector kd = JointVector::Zero();

  /// Throws InvalidInput unless all twelve gains are finite and non-negative.
  void validate() const;
};

/// How often the controller output is refreshed while the plant is integrated.
enum class ControlUpdate {
  continuous,        // evaluated at every integrator stage
  zero_order_hold,   // evaluated at control instants and held in between
};

struct SimSettings {
  double dt_control = 0.01;
  double dt_integration = 0.001;
  ControlUpdate update = ControlUpdate::continuous;
};

/// IAE reported for every joint of a run that diverged.
inline constexpr double kDivergedIae = 1e9;

struct SimResult {
  std::vector<double> time;
  std::vector<JointVector> q, qd, q_des, qd_des, tau;
  JointVector iae = JointVector::Zero();
  bool diverged = false;

  std::size_t samples() const { return time.size(); }
  JointVector error(std::size_t k) const { return q_des[k] - q[k]; }
};

/// tau = A(q) tau' + h(q, qd), tau' = qdd_d + kd (qd_d - qd) + kp (q_d - q).
JointVector control_torque(const RobotModel& model, const GainSet& gains, const JointVector& q,
                           const JointVector& qd, const DesiredState& desired);

/// Per-joint sum of |e(k)| over the sequence. Throws InvalidInput on an empty sequence
/// or non-finite entries.
JointVector iae(std::span<const JointVector> errors);

/// Closed-loop run of the computed-torque controller on the rigid-body plant from
/// (q0, qd0) over the full trajectory. State is logged at every control instant
/// t_k = k dt_control, k = 0..l; the IAE sums the position errors of samples k = 1..l.
/// A run whose state stops being finite is flagged as diverged with IAE kDivergedIae.
SimResult simulate(const RobotModel& model, const GainSet& gains, const TrajectorySpec& spec,
                   const SimSettings& settings, const JointVector& q0, const JointVector& qd0);

/// Convenience overload starting at rest on the trajectory, (q_initial, 0).
SimResult simulate(const RobotModel& model, const GainSet& gains, const TrajectorySpec& spec,
                   const SimSettings& settings = {});

/// time, desired/actual positions, desired/actual velocities and torques; 12 significant digits.
void write_trajectory_csv(const SimResult& result, const std::filesystem::path& path);

/// One file per joint (joint1_tracking.csv ...) with desired and actual position and velocity.
void write_joint_tracking_csvs(const SimResult& result, const std::filesystem::path& directory);

}  // namespace pumatune

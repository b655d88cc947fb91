#pragma once

#include <span>
#include <vector>

#include "pumatune/control.hpp"
#include "pumatune/robot_model.hpp"
#include "pumatune/trajectory.hpp"
#include "pumatune/tuner/config.hpp"

namespace pumatune::tuner {

/// Chromosome layout [kp1 .. kp6, kd1 .. kd6]. Throws InvalidInput unless it has 12 genes.
GainSet decode(std::span<const double> chromosome);
std::vector<double> encode(const GainSet& gains);

/// Six-objective IAE problem: one closed-loop run per chromosome, starting from
/// q_initial + initial_offset at rest.
class GainTuningProblem {
 public:
  GainTuningProblem(RobotModel model, TrajectorySpec trajectory, SimSettings settings,
                    JointVector initial_offset);

  /// Per-joint IAE. Never throws for a 12-gene chromosome: runs that diverge or whose
  /// gains are invalid score kDivergedIae on every joint.
  std::vector<double> evaluate(std::span<const double> chromosome) const;

  SimResult simulate(const GainSet& gains) const;

  const RobotModel& model() const { return model_; }
  const TrajectorySpec& trajectory() const { return trajectory_; }

 private:
  RobotModel model_;
  TrajectorySpec trajectory_;
  SimSettings settings_;
  JointVector initial_offset_;
};

}  // namespace pumatune::tuner

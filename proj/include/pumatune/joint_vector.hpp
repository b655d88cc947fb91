#pragma once

#include <string_view>

#include <Eigen/Core>

namespace pumatune {

inline constexpr int kJoints = 6;

/// Positions, velocities, accelerations, torques or per-joint gains of the arm.
using JointVector = Eigen::Matrix<double, kJoints, 1>;
using JointMatrix = Eigen::Matrix<double, kJoints, kJoints>;

inline bool all_finite(const JointVector& v) { return v.allFinite(); }

/// Throws InvalidInput naming `what` when `v` holds a NaN or infinity.
void require_finite(const JointVector& v, std::string_view what);

}  // namespace pumatune

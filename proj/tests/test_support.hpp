#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "pumatune/joint_vector.hpp"
#include "pumatune/robot_model.hpp"

namespace pumatune::testing {

inline std::string source_path(const std::string& relative) {
  return std::string(PUMATUNE_SOURCE_DIR) + "/" + relative;
}

inline const RobotModel& puma() {
  static const RobotModel model = load_robot_model(source_path("data/puma560.json"));
  return model;
}

inline JointVector random_joints(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  JointVector v;
  for (int j = 0; j < kJoints; ++j) v[j] = dist(rng);
  return v;
}

inline JointVector degrees(std::initializer_list<double> values) {
  JointVector v;
  int j = 0;
  for (double x : values) v[j++] = x * std::numbers::pi / 180.0;
  return v;
}

/// Closed-form solution of e'' + kd e' + kp e = 0 with e(0) = e0, e'(0) = 0: the tracking
/// error of one joint under exact computed-torque cancellation.
inline double second_order_error(double kp, double kd, double e0, double t) {
  if (kp == 0.0) return e0;
  const double disc = kd * kd - 4.0 * kp;
  if (std::abs(disc) < 1e-12 * std::max(1.0, kd * kd)) {
    const double r = -0.5 * kd;
    return e0 * (1.0 - r * t) * std::exp(r * t);
  }
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double r1 = 0.5 * (-kd + s), r2 = 0.5 * (-kd - s);
    return e0 * (-r2 * std::exp(r1 * t) + r1 * std::exp(r2 * t)) / (r1 - r2);
  }
  const double sigma = -0.5 * kd, omega = 0.5 * std::sqrt(-disc);
  return e0 * std::exp(sigma * t) * (std::cos(omega * t) - sigma / omega * std::sin(omega * t));
}

/// IAE of that error over samples t = k dt, k = 1..steps.
inline double second_order_iae(double kp, double kd, double e0, double dt, int steps) {
  double sum = 0.0;
  for (int k = 1; k <= steps; ++k) sum += std::abs(second_order_error(kp, kd, e0, k * dt));
  return sum;
}

}  // namespace pumatune::testing

#include "pumatune/trajectory.hpp"

#include <cmath>

#include <fmt/format.h>

#include "pumatune/errors.hpp"

namespace pumatune {

TrajectorySpec::TrajectorySpec(JointVector q_initial, JointVector q_final, double duration)
    : q_initial_(q_initial), q_final_(q_final), duration_(duration) {
  require_finite(q_initial_, "initial pose");
  require_finite(q_final_, "final pose");
  if (!std::isfinite(duration_) || duration_ <= 0.0) {
    throw InvalidInput(fmt::format("trajectory duration must be positive, got {}", duration_));
  }
}

namespace {

double normalised_time(double t, double duration) {
  if (!(duration > 0.0)) throw InvalidInput("trajectory duration must be positive");
  if (!(t >= 0.0 && t <= duration)) {
    throw OutOfRange(fmt::format("time {} outside trajectory [0, {}]", t, duration));
  }
  return t / duration;
}

}  // namespace

double scaling(double t, double duration) {
  const double s = normalised_time(t, duration);
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double scaling_rate(double t, double duration) {
  const double s = normalised_time(t, duration);
  const double u = s * (1.0 - s);
  return 30.0 * u * u / duration;
}

double scaling_accel(double t, double duration) {
  const double s = normalised_time(t, duration);
  return 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s) / (duration * duration);
}

DesiredState desired_state(const TrajectorySpec& spec, double t) {
  const double tf = spec.duration();
  const JointVector d = spec.displacement();
  const double r = scaling(t, tf);
  // Blend form of q_i + r D; reproduces both endpoint poses bit-exactly.
  const JointVector q = (1.0 - r) * spec.q_initial() + r * spec.q_final();
  return {q, scaling_rate(t, tf) * d, scaling_accel(t, tf) * d};
}

}  // namespace pumatune

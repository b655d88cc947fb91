#include "pumatune/control.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <iterator>

#include "pumatune/dynamics.hpp"
#include "pumatune/errors.hpp"
#include "pumatune/rk4.hpp"

namespace pumatune {

void GainSet::validate() const {
  require_finite(kp, "proportional gains");
  require_finite(kd, "derivative gains");
  if ((kp.array() < 0.0).any() || (kd.array() < 0.0).any()) {
    throw InvalidInput("controller gains must be non-negative");
  }
}

JointVector control_torque(const RobotModel& model, const GainSet& gains, const JointVector& q,
                           const JointVector& qd, const DesiredState& desired) {
  const JointVector aux = desired.qdd + gains.kd.cwiseProduct(desired.qd - qd) +
                          gains.kp.cwiseProduct(desired.q - q);
  return inverse_dynamics(model, q, qd, aux);
}

JointVector iae(std::span<const JointVector> errors) {
  if (errors.empty()) throw InvalidInput("IAE needs at least one error sample");
  JointVector sum = JointVector::Zero();
  for (const JointVector& e : errors) {
    require_finite(e, "error sample");
    sum += e.cwiseAbs();
  }
  return sum;
}

namespace {

using State = Eigen::Matrix<double, 2 * kJoints, 1>;

// n such that n * step == span within 1e-9, or InvalidInput.
long divisions(double span, double step, const char* what) {
  if (!std::isfinite(step) || step <= 0.0) {
    throw InvalidInput(fmt::format("{} must be positive", what));
  }
  const double ratio = span / step;
  const long n = std::lround(ratio);
  if (n < 1 || std::abs(static_cast<double>(n) * step - span) > 1e-9) {
    throw InvalidInput(fmt::format("{} = {} does not divide {}", what, step, span));
  }
  return n;
}

}  // namespace

SimResult simulate(const RobotModel& model, const GainSet& gains, const TrajectorySpec& spec,
                   const SimSettings& settings, const JointVector& q0, const JointVector& qd0) {
  gains.validate();
  require_finite(q0, "initial joint positions");
  require_finite(qd0, "initial joint velocities");
  const double tf = spec.duration();
  const long steps = divisions(tf, settings.dt_control, "dt_control");
  const long substeps = divisions(settings.dt_control, settings.dt_integration, "dt_integration");
  const double dt = tf / static_cast<double>(steps);
  const double h = dt / static_cast<double>(substeps);

  SimResult out;
  const auto reserve = static_cast<std::size_t>(steps + 1);
  for (auto* v : {&out.q, &out.qd, &out.q_des, &out.qd_des, &out.tau}) v->reserve(reserve);
  out.time.reserve(reserve);

  State x;
  x << q0, qd0;
  JointVector held_tau = JointVector::Zero();

  auto log_sample = [&](double t) {
    const DesiredState des = desired_state(spec, t);
    const JointVector q = x.head<kJoints>(), qd = x.tail<kJoints>();
    held_tau = control_torque(model, gains, q, qd, des);
    out.time.push_back(t);
    out.q.push_back(q);
    out.qd.push_back(qd);
    out.q_des.push_back(des.q);
    out.qd_des.push_back(des.qd);
    out.tau.push_back(held_tau);
  };

  auto plant = [&](double t, const State& s) -> State {
    const JointVector q = s.head<kJoints>(), qd = s.tail<kJoints>();
    JointVector tau = held_tau;
    if (settings.update == ControlUpdate::continuous) {
      tau = control_torque(model, gains, q, qd, desired_state(spec, std::min(t, tf)));
    }
    State dx;
    dx << qd, forward_dynamics(model, q, qd, tau);
    return dx;
  };

  try {
    log_sample(0.0);
    for (long k = 0; k < steps; ++k) {
      const double t0 = static_cast<double>(k) * dt;
      for (long m = 0; m < substeps; ++m) {
        x = rk4_step(plant, t0 + static_cast<double>(m) * h, x, h);
        if (!x.allFinite()) throw SingularConfiguration("state became non-finite");
      }
      log_sample(k + 1 == steps ? tf : static_cast<double>(k + 1) * dt);
    }
  } catch (const SingularConfiguration&) {
    out.diverged = true;
  } catch (const InvalidInput&) {
    // non-finite state reaching the dynamics
    out.diverged = true;
  }

  if (out.diverged) {
    out.iae = JointVector::Constant(kDivergedIae);
    return out;
  }
  std::vector<JointVector> errors;
  errors.reserve(out.samples() - 1);
  for (std::size_t k = 1; k < out.samples(); ++k) errors.push_back(out.error(k));
  out.iae = iae(errors);
  return out;
}

SimResult simulate(const RobotModel& model, const GainSet& gains, const TrajectorySpec& spec,
                   const SimSettings& settings) {
  return simulate(model, gains, spec, settings, spec.q_initial(), JointVector::Zero());
}

namespace {

template <typename Row>
void append_joints(std::string& line, const Row& v) {
  for (int j = 0; j < kJoints; ++j) fmt::format_to(std::back_inserter(line), ",{:.12g}", v[j]);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("{}: cannot open for writing", path.string()));
  return out;
}

}  // namespace

void write_trajectory_csv(const SimResult& result, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  std::string header = "time";
  for (const char* group : {"q_des", "q", "qd_des", "qd", "tau"}) {
    for (int j = 1; j <= kJoints; ++j) fmt::format_to(std::back_inserter(header), ",{}{}", group, j);
  }
  out << header << '\n';
  for (std::size_t k = 0; k < result.samples(); ++k) {
    std::string line = fmt::format("{:.12g}", result.time[k]);
    append_joints(line, result.q_des[k]);
    append_joints(line, result.q[k]);
    append_joints(line, result.qd_des[k]);
    append_joints(line, result.qd[k]);
    append_joints(line, result.tau[k]);
    out << line << '\n';
  }
  if (!out) throw std::runtime_error(fmt::format("{}: write failed", path.string()));
}

void write_joint_tracking_csvs(const SimResult& result, const std::filesystem::path& directory) {
  for (int j = 0; j < kJoints; ++j) {
    const auto path = directory / fmt::format("joint{}_tracking.csv", j + 1);
    std::ofstream out = open_for_write(path);
    out << "time,q_des,q,qd_des,qd,error\n";
    for (std::size_t k = 0; k < result.samples(); ++k) {
      out << fmt::format("{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", result.time[k],
                         result.q_des[k][j], result.q[k][j], result.qd_des[k][j], result.qd[k][j],
                         result.q_des[k][j] - result.q[k][j]);
    }
    if (!out) throw std::runtime_error(fmt::format("{}: write failed", path.string()));
  }
}

}  // namespace pumatune

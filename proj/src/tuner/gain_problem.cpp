#include "pumatune/tuner/gain_problem.hpp"

#include <fmt/format.h>

#include "pumatune/errors.hpp"

namespace pumatune::tuner {

GainSet decode(std::span<const double> chromosome) {
  if (chromosome.size() != kGenes) {
    throw InvalidInput(fmt::format("chromosome needs {} genes, got {}", kGenes, chromosome.size()));
  }
  GainSet gains;
  for (int j = 0; j < kJoints; ++j) {
    gains.kp[j] = chromosome[static_cast<std::size_t>(j)];
    gains.kd[j] = chromosome[static_cast<std::size_t>(j + kJoints)];
  }
  return gains;
}

std::vector<double> encode(const GainSet& gains) {
  std::vector<double> c(kGenes);
  for (int j = 0; j < kJoints; ++j) {
    c[static_cast<std::size_t>(j)] = gains.kp[j];
    c[static_cast<std::size_t>(j + kJoints)] = gains.kd[j];
  }
  return c;
}

GainTuningProblem::GainTuningProblem(RobotModel model, TrajectorySpec trajectory, SimSettings settings,
                                     JointVector initial_offset)
    : model_(std::move(model)),
      trajectory_(std::move(trajectory)),
      settings_(settings),
      initial_offset_(initial_offset) {
  require_finite(initial_offset_, "initial offset");
}

SimResult GainTuningProblem::simulate(const GainSet& gains) const {
  return pumatune::simulate(model_, gains, trajectory_, settings_, trajectory_.q_initial() + initial_offset_,
                            JointVector::Zero());
}

std::vector<double> GainTuningProblem::evaluate(std::span<const double> chromosome) const {
  const GainSet gains = decode(chromosome);
  JointVector iae = JointVector::Constant(kDivergedIae);
  try {
    iae = simulate(gains).iae;
  } catch (const InvalidInput&) {
    // negative gains under user-widened bounds
  }
  return {iae.data(), iae.data() + kJoints};
}

}  // namespace pumatune::tuner

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "pumatune/control.hpp"
#include "pumatune/moea/individual.hpp"
#include "pumatune/moea/operators.hpp"
#include "pumatune/trajectory.hpp"

namespace pumatune::tuner {

inline constexpr std::size_t kGenes = 2 * kJoints;
inline constexpr std::size_t kObjectives = kJoints;

struct OptimizerConfig {
  std::size_t population = 2;
  int generations = 3;
  moea::OperatorConfig operators;
  moea::Bounds bounds = moea::Bounds::uniform(kGenes, 0.0, 100.0);
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  /// Initial joint-position offset from q_initial during tuning runs [rad].
  JointVector initial_offset = JointVector::Constant(0.05);
};

struct RunConfig {
  std::filesystem::path robot_file;
  TrajectorySpec trajectory = default_trajectory();
  SimSettings simulation;
  /// Initial joint-position offset for `simulate` [rad].
  JointVector simulation_offset = JointVector::Zero();
  GainSet gains = reference_gains();
  OptimizerConfig optimizer;
  std::filesystem::path output_directory = "out";
  bool plot_data = false;

  /// q_i = (-20, 60, -120, 0, -30, 0) deg, q_f = (20, -60, -60, 0, 30, 0) deg, 1 s.
  static TrajectorySpec default_trajectory();
  /// kp = (700, 1100, 400, 40, 30, 40), kd = (20, 20, 20, 5, 5, 5).
  static GainSet reference_gains();

  /// Cross-field checks (population parity, dt divisibility, gains); throws ParseError
  /// attributed to `origin`.
  void validate(const std::string& origin) const;
};

/// Reads a JSON run configuration. Omitted fields keep the defaults above; a relative
/// robot path is resolved against the configuration file's directory. Errors name the
/// file and the offending field.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& text, const std::string& origin,
                           const std::filesystem::path& base_directory);

}  // namespace pumatune::tuner

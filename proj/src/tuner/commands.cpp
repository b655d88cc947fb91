#include "pumatune/tuner/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "pumatune/tuner/gain_problem.hpp"

namespace pumatune::tuner {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("{}: cannot open for writing", path.string()));
  f << text;
  if (!f) throw std::runtime_error(fmt::format("{}: write failed", path.string()));
}

SimulateReport analyse(SimResult result) {
  SimulateReport report;
  for (std::size_t k = 0; k < result.samples(); ++k) {
    report.max_abs_error = report.max_abs_error.cwiseMax(result.error(k).cwiseAbs());
  }
  if (result.samples() > 0) report.final_abs_error = result.error(result.samples() - 1).cwiseAbs();
  report.result = std::move(result);
  return report;
}

std::string simulation_summary(const SimulateReport& report) {
  std::string s;
  auto it = std::back_inserter(s);
  fmt::format_to(it, "samples: {}\n", report.result.samples());
  fmt::format_to(it, "diverged: {}\n", report.result.diverged ? "yes" : "no");
  fmt::format_to(it, "joint,iae_rad,max_abs_error_deg,final_abs_error_deg\n");
  for (int j = 0; j < kJoints; ++j) {
    fmt::format_to(it, "{},{:.12g},{:.12g},{:.12g}\n", j + 1, report.result.iae[j],
                   report.max_abs_error[j] * kRadToDeg, report.final_abs_error[j] * kRadToDeg);
  }
  return s;
}

void write_simulation_files(const SimulateReport& report, const RunConfig& config) {
  write_trajectory_csv(report.result, config.output_directory / "trajectory.csv");
  if (config.plot_data) write_joint_tracking_csvs(report.result, config.output_directory);
}

std::string join_values(std::span<const double> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    fmt::format_to(std::back_inserter(s), "{}{:.12g}", i ? "," : "", values[i]);
  }
  return s;
}

std::string tuning_summary(const RunConfig& config, const TuneReport& report) {
  const moea::Population& final_pop = report.evolution.final_population();
  const auto columns = archive_columns();
  std::string s;
  auto it = std::back_inserter(s);
  fmt::format_to(it, "operators: {}\n", moea::to_string(config.optimizer.operators.family));
  fmt::format_to(it, "population: {}\ngenerations: {}\nseed: {}\nevaluations: {}\n", config.optimizer.population,
                 config.optimizer.generations, config.optimizer.seed, report.evolution.evaluations);
  fmt::format_to(it, "\nbest per objective (final population)\nobjective,value,member,");
  for (const auto& g : columns.genes) fmt::format_to(it, "{},", g);
  fmt::format_to(it, "{}\n", fmt::join(columns.objectives, ","));
  for (std::size_t m = 0; m < kObjectives; ++m) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < final_pop.members.size(); ++i) {
      if (final_pop.members[i].objectives[m] < final_pop.members[best].objectives[m]) best = i;
    }
    const moea::Individual& ind = final_pop.members[best];
    fmt::format_to(it, "{},{:.12g},{},{},{}\n", columns.objectives[m], ind.objectives[m], best,
                   join_values(ind.genes), join_values(ind.objectives));
  }
  const moea::Individual& c = final_pop.members[report.compromise];
  fmt::format_to(it, "\ncompromise (smallest IAE sum): member {}\ngenes: {}\niae: {}\n", report.compromise,
                 join_values(c.genes), join_values(c.objectives));
  fmt::format_to(it, "\ncompromise tracking\n{}", simulation_summary(report.compromise_run));
  return s;
}

GainTuningProblem make_problem(const RunConfig& config) {
  return GainTuningProblem(load_robot_model(config.robot_file), config.trajectory, config.simulation,
                           config.optimizer.initial_offset);
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

moea::ArchiveColumns archive_columns() {
  moea::ArchiveColumns c;
  for (int j = 1; j <= kJoints; ++j) c.genes.push_back(fmt::format("kp{}", j));
  for (int j = 1; j <= kJoints; ++j) c.genes.push_back(fmt::format("kd{}", j));
  for (int j = 1; j <= kJoints; ++j) c.objectives.push_back(fmt::format("iae{}", j));
  return c;
}

SimulateReport run_simulation(const RunConfig& config) {
  config.validate("run configuration");
  const RobotModel model = load_robot_model(config.robot_file);
  return analyse(simulate(model, config.gains, config.trajectory, config.simulation,
                          config.trajectory.q_initial() + config.simulation_offset, JointVector::Zero()));
}

TuneReport run_tune(const RunConfig& config) {
  config.validate("run configuration");
  const GainTuningProblem problem = make_problem(config);

  moea::EvolveSettings settings;
  settings.population_size = config.optimizer.population;
  settings.generations = config.optimizer.generations;
  settings.objectives = kObjectives;
  settings.bounds = config.optimizer.bounds;
  settings.operators = config.optimizer.operators;
  settings.seed = config.optimizer.seed;
  settings.threads = config.optimizer.threads;
  settings.failure_objective = kDivergedIae;

  TuneReport report;
  report.evolution =
      moea::evolve([&problem](std::span<const double> genes) { return problem.evaluate(genes); }, settings);

  const auto& members = report.evolution.final_population().members;
  double best_sum = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < members.size(); ++i) {
    double sum = 0.0;
    for (double v : members[i].objectives) sum += v;
    if (sum < best_sum) {
      best_sum = sum;
      report.compromise = i;
    }
  }
  report.compromise_run = analyse(problem.simulate(decode(members[report.compromise].genes)));
  return report;
}

namespace {

TuneReport tune_and_write(const RunConfig& config, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  TuneReport report = run_tune(config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::filesystem::create_directories(config.output_directory);
  const auto columns = archive_columns();
  moea::write_population_csv(config.output_directory / "initial_population.csv",
                             std::span(&report.evolution.initial, 1), columns);
  moea::write_population_csv(config.output_directory / "archive.csv", report.evolution.generations, columns);
  moea::write_front_csv(config.output_directory / "front.csv", report.evolution.final_population(), columns);
  write_simulation_files(report.compromise_run, config);
  const std::string summary = tuning_summary(config, report);
  write_text(config.output_directory / "summary.txt", summary);
  out << summary << fmt::format("\nelapsed: {:.4f} s\n", seconds);
  return report;
}

}  // namespace

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SimulateReport report = run_simulation(config);
    std::filesystem::create_directories(config.output_directory);
    write_simulation_files(report, config);
    const std::string summary = simulation_summary(report);
    write_text(config.output_directory / "summary.txt", summary);
    out << summary;
  });
}

int cmd_tune(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { tune_and_write(config, out); });
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<std::vector<double>> bests;
    const moea::OperatorFamily families[] = {moea::OperatorFamily::real_valued,
                                             moea::OperatorFamily::sbx_polynomial};
    for (moea::OperatorFamily family : families) {
      RunConfig run = config;
      run.optimizer.operators.family = family;
      run.output_directory = config.output_directory / std::string(moea::to_string(family));
      std::ostringstream log;
      const TuneReport report = tune_and_write(run, log);
      out << moea::to_string(family) << ": " << log.str().substr(log.str().rfind("elapsed"));
      std::vector<double> best(kObjectives, std::numeric_limits<double>::infinity());
      for (const auto& ind : report.evolution.final_population().members) {
        for (std::size_t m = 0; m < kObjectives; ++m) best[m] = std::min(best[m], ind.objectives[m]);
      }
      bests.push_back(best);
    }
    std::string csv = "objective,real-valued,sbx-polynomial\n";
    double sums[2] = {0.0, 0.0};
    for (std::size_t m = 0; m < kObjectives; ++m) {
      csv += fmt::format("iae{},{:.12g},{:.12g}\n", m + 1, bests[0][m], bests[1][m]);
      sums[0] += bests[0][m];
      sums[1] += bests[1][m];
    }
    csv += fmt::format("sum,{:.12g},{:.12g}\n", sums[0], sums[1]);
    write_text(config.output_directory / "operator_comparison.csv", csv);
    out << "best IAE per objective in the final population (same seed and budget)\n" << csv;
  });
}

}  // namespace pumatune::tuner

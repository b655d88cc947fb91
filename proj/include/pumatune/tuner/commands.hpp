#pragma once

#include <iosfwd>

#include "pumatune/control.hpp"
#include "pumatune/moea/archive.hpp"
#include "pumatune/moea/nsga2.hpp"
#include "pumatune/tuner/config.hpp"

namespace pumatune::tuner {

struct SimulateReport {
  SimResult result;
  JointVector max_abs_error = JointVector::Zero();    // over all logged samples [rad]
  JointVector final_abs_error = JointVector::Zero();  // at t_f [rad]
};

/// Runs the configured gains along the configured trajectory.
SimulateReport run_simulation(const RunConfig& config);

struct TuneReport {
  moea::EvolveResult evolution;
  std::size_t compromise = 0;  // final-population member with the smallest IAE sum
  SimulateReport compromise_run;
};

TuneReport run_tune(const RunConfig& config);

/// Column names of the tuning archive: kp1..kp6, kd1..kd6 and iae1..iae6.
moea::ArchiveColumns archive_columns();

/// `simulate`: writes trajectory.csv and summary.txt (plus joint<j>_tracking.csv with
/// plot_data) to config.output_directory and prints the summary. Returns the exit status.
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// `tune`: writes initial_population.csv, archive.csv, front.csv, summary.txt and the
/// trajectory of the compromise solution; prints the summary and the wall-clock time.
int cmd_tune(const RunConfig& config, std::ostream& out, std::ostream& err);

/// `compare`: runs `tune` with both operator families under the same seed, into
/// <out>/real-valued and <out>/sbx-polynomial, and writes operator_comparison.csv.
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace pumatune::tuner

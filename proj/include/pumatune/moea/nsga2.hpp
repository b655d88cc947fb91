#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pumatune/moea/individual.hpp"
#include "pumatune/moea/operators.hpp"

namespace pumatune::moea {

/// Maps a gene vector to its objective vector. Must be deterministic and free of shared
/// mutable state: evaluations of one generation may run concurrently.
using Evaluator = std::function<std::vector<double>(std::span<const double>)>;

struct EvolveSettings {
  std::size_t population_size = 2;  // N, even
  int generations = 1;
  std::size_t objectives = 1;       // m
  Bounds bounds;
  OperatorConfig operators;
  std::uint64_t seed = 1;
  std::size_t threads = 1;          // evaluation workers; 0 = hardware concurrency
  /// Objective value assigned to every objective when the evaluator throws or returns
  /// a malformed or non-finite vector.
  double failure_objective = 1e9;

  void validate() const;
};

struct GenerationStats {
  int generation = 0;
  std::vector<double> best;  // per-objective minimum over the population
  std::size_t first_front = 0;
  std::size_t failed_evaluations = 0;
};

struct EvolveResult {
  Population initial;                   // generation 0, sorted
  std::vector<Population> generations;  // survivors of generations 1..G
  std::vector<GenerationStats> stats;   // index 0 is the initial population
  std::size_t evaluations = 0;

  const Population& final_population() const { return generations.back(); }
};

/// Elitist non-dominated sorting GA: uniform random initial population, binary crowded
/// tournaments (N draws with replacement, paired in draw order), variation, and
/// (rank, crowding) truncation of parents plus offspring back to N.
EvolveResult evolve(const Evaluator& evaluate, const EvolveSettings& settings);

/// N survivors of `merged` by crowded-comparison order: whole fronts first, the last
/// admitted front truncated by decreasing crowding (ties keep merged order). Survivors
/// come back re-ranked among themselves.
std::vector<Individual> select_survivors(std::vector<Individual> merged, std::size_t n);

}  // namespace pumatune::moea

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace pumatune::moea {

/// Per-gene box constraints of the search space.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  Bounds() = default;
  Bounds(std::vector<double> lo, std::vector<double> hi);
  /// Same [lo, hi] for every one of `dimension` genes.
  static Bounds uniform(std::size_t dimension, double lo, double hi);

  std::size_t size() const { return lower.size(); }
  bool contains(std::span<const double> genes) const;
  double clamp(std::size_t i, double value) const;
};

struct Individual {
  std::vector<double> genes;
  std::vector<double> objectives;  // minimised
  int rank = 0;                    // 1 = non-dominated; 0 = not yet sorted
  double crowding = 0.0;           // +inf on the boundary of a front
};

struct Population {
  std::vector<Individual> members;
  int generation = 0;
};

inline constexpr double kInfiniteCrowding = std::numeric_limits<double>::infinity();

}  // namespace pumatune::moea

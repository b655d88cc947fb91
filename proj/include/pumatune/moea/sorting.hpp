#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pumatune/moea/individual.hpp"
#include "pumatune/moea/rng.hpp"

namespace pumatune::moea {

using Front = std::vector<std::size_t>;

/// Pareto dominance under minimisation: a is no worse everywhere and better somewhere.
/// Throws InvalidInput when the lengths differ.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Peels successive non-dominated sets. Front 0 holds the individuals nobody dominates;
/// within a front indices are ascending.
std::vector<Front> nondominated_sort(std::span<const std::vector<double>> objectives);

/// Crowding distance of each member of `front`, in the order of `front`.
std::vector<double> crowding_distance(std::span<const std::size_t> front,
                                      std::span<const std::vector<double>> objectives);

/// Sorts the population, stores rank (front index + 1) and crowding in each member,
/// and returns the fronts.
std::vector<Front> assign_rank_and_crowding(std::vector<Individual>& members);

/// Crowded-comparison order: lower rank, then larger crowding.
bool crowded_better(const Individual& a, const Individual& b);

/// Binary tournament decision between two sorted individuals; exact ties are broken by
/// a fair coin from `rng`. Returns true when `a` wins.
bool crowded_compare(const Individual& a, const Individual& b, Rng& rng);

}  // namespace pumatune::moea

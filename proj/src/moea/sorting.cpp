#include "pumatune/moea/sorting.hpp"

#include <algorithm>
#include <numeric>

#include "pumatune/errors.hpp"

namespace pumatune::moea {

bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInput("objective vectors differ in length");
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

std::vector<Front> nondominated_sort(std::span<const std::vector<double>> objectives) {
  const std::size_t n = objectives.size();
  // dominated_by[i] counts the members that dominate i; beats[i] lists those i dominates.
  std::vector<std::size_t> dominated_by(n, 0);
  std::vector<std::vector<std::size_t>> beats(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(objectives[i], objectives[j])) {
        beats[i].push_back(j);
        ++dominated_by[j];
      } else if (dominates(objectives[j], objectives[i])) {
        beats[j].push_back(i);
        ++dominated_by[i];
      }
    }
  }

  std::vector<Front> fronts;
  Front current;
  for (std::size_t i = 0; i < n; ++i) {
    if (dominated_by[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    Front next;
    for (std::size_t i : current) {
      for (std::size_t j : beats[i]) {
        if (--dominated_by[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const std::size_t> front,
                                      std::span<const std::vector<double>> objectives) {
  const std::size_t n = front.size();
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), kInfiniteCrowding);
    return distance;
  }
  const std::size_t m = objectives[front[0]].size();
  std::vector<std::size_t> order(n);
  for (std::size_t obj = 0; obj < m; ++obj) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto value = [&](std::size_t pos) { return objectives[front[pos]][obj]; };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
    distance[order.front()] = kInfiniteCrowding;
    distance[order.back()] = kInfiniteCrowding;
    const double span = value(order.back()) - value(order.front());
    if (span <= 0.0) continue;  // flat objective adds nothing
    for (std::size_t k = 1; k + 1 < n; ++k) {
      distance[order[k]] += (value(order[k + 1]) - value(order[k - 1])) / span;
    }
  }
  return distance;
}

std::vector<Front> assign_rank_and_crowding(std::vector<Individual>& members) {
  std::vector<std::vector<double>> objectives;
  objectives.reserve(members.size());
  for (const auto& ind : members) objectives.push_back(ind.objectives);
  std::vector<Front> fronts = nondominated_sort(objectives);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    const std::vector<double> dist = crowding_distance(fronts[f], objectives);
    for (std::size_t k = 0; k < fronts[f].size(); ++k) {
      Individual& ind = members[fronts[f][k]];
      ind.rank = static_cast<int>(f + 1);
      ind.crowding = dist[k];
    }
  }
  return fronts;
}

bool crowded_better(const Individual& a, const Individual& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.crowding > b.crowding;
}

bool crowded_compare(const Individual& a, const Individual& b, Rng& rng) {
  if (crowded_better(a, b)) return true;
  if (crowded_better(b, a)) return false;
  return rng.coin();
}

}  // namespace pumatune::moea

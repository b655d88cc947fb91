#include "pumatune/moea/nsga2.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "pumatune/errors.hpp"
#include "pumatune/moea/rng.hpp"
#include "pumatune/moea/sorting.hpp"

namespace pumatune::moea {

void EvolveSettings::validate() const {
  if (population_size < 2 || population_size % 2 != 0) {
    throw InvalidInput(fmt::format("population size must be even and at least 2, got {}", population_size));
  }
  if (generations < 1) throw InvalidInput("generations must be at least 1");
  if (objectives < 1) throw InvalidInput("at least one objective is required");
  if (bounds.size() == 0) throw InvalidInput("bounds are empty");
  operators.validate();
}

namespace {

// Fills in objectives for members[begin, end). Results land at their own index, so the
// outcome does not depend on how the work is split across threads.
std::size_t evaluate_batch(std::vector<Individual>& members, std::size_t begin, const Evaluator& evaluate,
                           const EvolveSettings& settings) {
  const std::size_t count = members.size() - begin;
  std::vector<char> failed(count, 0);
  auto work = [&](std::size_t k) {
    Individual& ind = members[begin + k];
    try {
      ind.objectives = evaluate(ind.genes);
      const bool ok = ind.objectives.size() == settings.objectives &&
                      std::all_of(ind.objectives.begin(), ind.objectives.end(),
                                  [](double v) { return std::isfinite(v); });
      if (ok) return;
    } catch (const std::exception&) {
    }
    ind.objectives.assign(settings.objectives, settings.failure_objective);
    failed[k] = 1;
  };

  std::size_t workers = settings.threads == 0 ? std::thread::hardware_concurrency() : settings.threads;
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++) work(k);
      });
    }
  }
  return static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
}

GenerationStats summarize(const Population& pop, std::size_t objectives, std::size_t failures) {
  GenerationStats s;
  s.generation = pop.generation;
  s.best.assign(objectives, std::numeric_limits<double>::infinity());
  for (const Individual& ind : pop.members) {
    for (std::size_t m = 0; m < objectives; ++m) s.best[m] = std::min(s.best[m], ind.objectives[m]);
    if (ind.rank == 1) ++s.first_front;
  }
  s.failed_evaluations = failures;
  return s;
}

}  // namespace

std::vector<Individual> select_survivors(std::vector<Individual> merged, std::size_t n) {
  if (merged.size() < n) throw InvalidInput("not enough individuals to select from");
  const std::vector<Front> fronts = assign_rank_and_crowding(merged);
  std::vector<Individual> survivors;
  survivors.reserve(n);
  for (const Front& front : fronts) {
    if (survivors.size() == n) break;
    if (survivors.size() + front.size() <= n) {
      for (std::size_t i : front) survivors.push_back(merged[i]);
      continue;
    }
    Front order = front;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return merged[a].crowding > merged[b].crowding; });
    for (std::size_t k = 0; survivors.size() < n; ++k) survivors.push_back(merged[order[k]]);
  }
  assign_rank_and_crowding(survivors);
  return survivors;
}

EvolveResult evolve(const Evaluator& evaluate, const EvolveSettings& settings) {
  settings.validate();
  const std::size_t n = settings.population_size;
  const Bounds& bounds = settings.bounds;
  Rng rng(settings.seed);
  EvolveResult result;

  Population pop;
  pop.generation = 0;
  pop.members.resize(n);
  for (Individual& ind : pop.members) {
    ind.genes.resize(bounds.size());
    for (std::size_t i = 0; i < bounds.size(); ++i) ind.genes[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
  }
  std::size_t failures = evaluate_batch(pop.members, 0, evaluate, settings);
  result.evaluations += n;
  assign_rank_and_crowding(pop.members);
  result.initial = pop;
  result.stats.push_back(summarize(pop, settings.objectives, failures));

  for (int gen = 1; gen <= settings.generations; ++gen) {
    std::vector<std::size_t> parents(n);
    for (std::size_t& p : parents) {
      const std::size_t a = rng.index(n);
      const std::size_t b = rng.index(n);
      p = crowded_compare(pop.members[a], pop.members[b], rng) ? a : b;
    }

    std::vector<Individual> merged = pop.members;
    merged.reserve(2 * n);
    for (std::size_t k = 0; k < n; k += 2) {
      auto [c1, c2] = crossover(pop.members[parents[k]].genes, pop.members[parents[k + 1]].genes, bounds,
                                settings.operators, rng);
      Individual o1, o2;
      o1.genes = mutate(std::move(c1), bounds, settings.operators, rng);
      o2.genes = mutate(std::move(c2), bounds, settings.operators, rng);
      merged.push_back(std::move(o1));
      merged.push_back(std::move(o2));
    }
    failures = evaluate_batch(merged, n, evaluate, settings);
    result.evaluations += n;

    pop.members = select_survivors(std::move(merged), n);
    pop.generation = gen;
    result.generations.push_back(pop);
    result.stats.push_back(summarize(pop, settings.objectives, failures));
  }
  return result;
}

}  // namespace pumatune::moea

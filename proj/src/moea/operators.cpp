#include "pumatune/moea/operators.hpp"

#include <cmath>

#include <fmt/format.h>

#include "pumatune/errors.hpp"

namespace pumatune::moea {

std::string_view to_string(OperatorFamily family) {
  switch (family) {
    case OperatorFamily::real_valued:
      return "real-valued";
    case OperatorFamily::sbx_polynomial:
      return "sbx-polynomial";
  }
  return "unknown";
}

OperatorFamily parse_operator_family(std::string_view name) {
  if (name == "real-valued") return OperatorFamily::real_valued;
  if (name == "sbx-polynomial") return OperatorFamily::sbx_polynomial;
  throw InvalidInput(fmt::format("unknown operator family '{}' (expected real-valued or sbx-polynomial)", name));
}

void OperatorConfig::validate() const {
  auto probability = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput(fmt::format("{} must lie in [0, 1]", what));
  };
  auto positive = [](double x, const char* what) {
    if (!(std::isfinite(x) && x > 0.0)) throw InvalidInput(fmt::format("{} must be positive", what));
  };
  probability(crossover_probability, "crossover probability");
  probability(mutation_probability, "mutation probability");
  positive(recombination_spread, "recombination spread");
  positive(mutation_range, "mutation range");
  positive(mutation_precision, "mutation precision");
  positive(sbx_eta, "SBX distribution index");
  positive(polynomial_eta, "polynomial mutation distribution index");
}

namespace {

void check_parents(const Genes& p1, const Genes& p2, const Bounds& bounds) {
  if (p1.size() != bounds.size() || p2.size() != bounds.size()) {
    throw InvalidInput("parent length does not match the bounds");
  }
}

}  // namespace

std::pair<Genes, Genes> recombine_real(const Genes& p1, const Genes& p2, const Bounds& bounds,
                                       const OperatorConfig& config, Rng& rng) {
  check_parents(p1, p2, bounds);
  Genes c1 = p1, c2 = p2;
  if (rng.uniform() >= config.crossover_probability) return {c1, c2};
  const double d = config.recombination_spread;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    const double a1 = rng.uniform(-d, 1.0 + d);
    const double a2 = rng.uniform(-d, 1.0 + d);
    c1[i] = bounds.clamp(i, p1[i] + a1 * (p2[i] - p1[i]));
    c2[i] = bounds.clamp(i, p1[i] + a2 * (p2[i] - p1[i]));
  }
  return {c1, c2};
}

Genes mutate_real(Genes genes, const Bounds& bounds, const OperatorConfig& config, Rng& rng) {
  if (genes.size() != bounds.size()) throw InvalidInput("gene length does not match the bounds");
  for (std::size_t i = 0; i < genes.size(); ++i) {
    if (rng.uniform() >= config.mutation_probability) continue;
    const double sign = rng.coin() ? 1.0 : -1.0;
    const double u = rng.uniform();
    const double step = config.mutation_range * (bounds.upper[i] - bounds.lower[i]) *
                        std::exp2(-u * config.mutation_precision);
    genes[i] = bounds.clamp(i, genes[i] + sign * step);
  }
  return genes;
}

std::pair<Genes, Genes> sbx_crossover(const Genes& p1, const Genes& p2, const Bounds& bounds,
                                      const OperatorConfig& config, Rng& rng) {
  check_parents(p1, p2, bounds);
  Genes c1 = p1, c2 = p2;
  if (rng.uniform() >= config.crossover_probability) return {c1, c2};
  const double eta = config.sbx_eta;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    if (rng.uniform() > 0.5) continue;
    if (std::abs(p1[i] - p2[i]) <= 1e-14) continue;
    const double y1 = std::min(p1[i], p2[i]);
    const double y2 = std::max(p1[i], p2[i]);
    const double lo = bounds.lower[i], hi = bounds.upper[i];
    const double u = rng.uniform();

    // spread factor for one side, limited by the distance to the nearer bound
    auto betaq = [&](double beta) {
      const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
      if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
      return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
    };
    const double child_lo = 0.5 * ((y1 + y2) - betaq(1.0 + 2.0 * (y1 - lo) / (y2 - y1)) * (y2 - y1));
    const double child_hi = 0.5 * ((y1 + y2) + betaq(1.0 + 2.0 * (hi - y2) / (y2 - y1)) * (y2 - y1));
    const double a = bounds.clamp(i, child_lo);
    const double b = bounds.clamp(i, child_hi);
    if (rng.coin()) {
      c1[i] = b;
      c2[i] = a;
    } else {
      c1[i] = a;
      c2[i] = b;
    }
  }
  return {c1, c2};
}

Genes polynomial_mutation(Genes genes, const Bounds& bounds, const OperatorConfig& config, Rng& rng) {
  if (genes.size() != bounds.size()) throw InvalidInput("gene length does not match the bounds");
  const double eta = config.polynomial_eta;
  const double power = 1.0 / (eta + 1.0);
  for (std::size_t i = 0; i < genes.size(); ++i) {
    if (rng.uniform() >= config.mutation_probability) continue;
    const double y = genes[i];
    const double lo = bounds.lower[i], hi = bounds.upper[i];
    const double delta1 = (y - lo) / (hi - lo);
    const double delta2 = (hi - y) / (hi - lo);
    const double u = rng.uniform();
    double deltaq;
    if (u <= 0.5) {
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - delta1, eta + 1.0);
      deltaq = std::pow(val, power) - 1.0;
    } else {
      const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - delta2, eta + 1.0);
      deltaq = 1.0 - std::pow(val, power);
    }
    genes[i] = bounds.clamp(i, y + deltaq * (hi - lo));
  }
  return genes;
}

std::pair<Genes, Genes> crossover(const Genes& p1, const Genes& p2, const Bounds& bounds,
                                  const OperatorConfig& config, Rng& rng) {
  if (config.family == OperatorFamily::sbx_polynomial) return sbx_crossover(p1, p2, bounds, config, rng);
  return recombine_real(p1, p2, bounds, config, rng);
}

Genes mutate(Genes genes, const Bounds& bounds, const OperatorConfig& config, Rng& rng) {
  if (config.family == OperatorFamily::sbx_polynomial) {
    return polynomial_mutation(std::move(genes), bounds, config, rng);
  }
  return mutate_real(std::move(genes), bounds, config, rng);
}

}  // namespace pumatune::moea

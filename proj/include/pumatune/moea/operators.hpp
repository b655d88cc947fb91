#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pumatune/moea/individual.hpp"
#include "pumatune/moea/rng.hpp"

namespace pumatune::moea {

using Genes = std::vector<double>;

enum class OperatorFamily {
  real_valued,     // intermediate recombination + breeder mutation
  sbx_polynomial,  // simulated binary crossover + polynomial mutation
};

std::string_view to_string(OperatorFamily family);
/// Accepts "real-valued" and "sbx-polynomial"; throws InvalidInput otherwise.
OperatorFamily parse_operator_family(std::string_view name);

struct OperatorConfig {
  double crossover_probability = 0.9;
  double mutation_probability = 1.0 / 12.0;  // per gene
  OperatorFamily family = OperatorFamily::real_valued;
  double recombination_spread = 0.25;  // d: alpha ~ U[-d, 1 + d]
  double mutation_range = 0.1;         // r: largest step as a fraction of the gene range
  double mutation_precision = 16.0;    // k: smallest step is r * range * 2^-k
  double sbx_eta = 20.0;
  double polynomial_eta = 20.0;

  /// Probabilities in [0, 1], shape parameters positive; throws InvalidInput.
  void validate() const;
};

/// child_i = p1_i + alpha_i (p2_i - p1_i), alpha_i ~ U[-d, 1 + d] drawn independently per
/// gene and per child; applied with probability p_c, otherwise the parents are copied.
std::pair<Genes, Genes> recombine_real(const Genes& p1, const Genes& p2, const Bounds& bounds,
                                       const OperatorConfig& config, Rng& rng);

/// Each gene with probability p_m moves by +/- r (upper - lower) 2^(-u k), u ~ U[0, 1].
Genes mutate_real(Genes genes, const Bounds& bounds, const OperatorConfig& config, Rng& rng);

/// Bounded simulated binary crossover with distribution index eta_c.
std::pair<Genes, Genes> sbx_crossover(const Genes& p1, const Genes& p2, const Bounds& bounds,
                                      const OperatorConfig& config, Rng& rng);

/// Bounded polynomial mutation with distribution index eta_m.
Genes polynomial_mutation(Genes genes, const Bounds& bounds, const OperatorConfig& config, Rng& rng);

/// Dispatch on config.family.
std::pair<Genes, Genes> crossover(const Genes& p1, const Genes& p2, const Bounds& bounds,
                                  const OperatorConfig& config, Rng& rng);
Genes mutate(Genes genes, const Bounds& bounds, const OperatorConfig& config, Rng& rng);

}  // namespace pumatune::moea

#include "pumatune/moea/individual.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "pumatune/errors.hpp"

namespace pumatune::moea {

Bounds::Bounds(std::vector<double> lo, std::vector<double> hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size() || lower.empty()) {
    throw InvalidInput("bounds need matching, non-empty lower and upper vectors");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i])) {
      throw InvalidInput(fmt::format("gene {}: bounds must be finite with lower < upper", i + 1));
    }
  }
}

Bounds Bounds::uniform(std::size_t dimension, double lo, double hi) {
  return Bounds(std::vector<double>(dimension, lo), std::vector<double>(dimension, hi));
}

bool Bounds::contains(std::span<const double> genes) const {
  if (genes.size() != size()) return false;
  for (std::size_t i = 0; i < genes.size(); ++i) {
    if (!(genes[i] >= lower[i] && genes[i] <= upper[i])) return false;
  }
  return true;
}

double Bounds::clamp(std::size_t i, double value) const { return std::clamp(value, lower[i], upper[i]); }

}  // namespace pumatune::moea

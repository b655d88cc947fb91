#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pumatune/moea/individual.hpp"

namespace pumatune::moea {

struct ArchiveColumns {
  std::vector<std::string> genes;
  std::vector<std::string> objectives;
};

/// One row per member: generation, index, genes, objectives, rank, crowding.
/// Reals carry 12 significant digits; infinite crowding is written as "inf".
void write_population_csv(const std::filesystem::path& path, std::span<const Population> populations,
                          const ArchiveColumns& columns);

/// Rank-1 members of `population` only, same columns.
void write_front_csv(const std::filesystem::path& path, const Population& population,
                     const ArchiveColumns& columns);

struct ArchiveRow {
  int generation = 0;
  std::size_t index = 0;
  Individual individual;
};

/// Reads a file written by write_population_csv / write_front_csv.
/// Throws ParseError naming the line and column on malformed input.
std::vector<ArchiveRow> read_population_csv(const std::filesystem::path& path, std::size_t gene_count,
                                            std::size_t objective_count);

}  // namespace pumatune::moea

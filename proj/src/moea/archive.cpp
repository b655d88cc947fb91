#include "pumatune/moea/archive.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>

#include "pumatune/errors.hpp"

namespace pumatune::moea {
namespace {

std::string header(const ArchiveColumns& columns) {
  std::string h = "generation,index";
  for (const auto& g : columns.genes) h += "," + g;
  for (const auto& o : columns.objectives) h += "," + o;
  return h + ",rank,crowding";
}

void append_row(std::string& out, int generation, std::size_t index, const Individual& ind) {
  auto it = std::back_inserter(out);
  fmt::format_to(it, "{},{}", generation, index);
  for (double g : ind.genes) fmt::format_to(it, ",{:.12g}", g);
  for (double o : ind.objectives) fmt::format_to(it, ",{:.12g}", o);
  fmt::format_to(it, ",{},{:.12g}\n", ind.rank, ind.crowding);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("{}: cannot open for writing", path.string()));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("{}: write failed", path.string()));
}

double parse_real(const std::string& cell, const std::string& where) {
  if (cell == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used == cell.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(where, "value", fmt::format("'{}' is not a number", cell));
}

}  // namespace

void write_population_csv(const std::filesystem::path& path, std::span<const Population> populations,
                          const ArchiveColumns& columns) {
  std::string text = header(columns) + "\n";
  for (const Population& pop : populations) {
    for (std::size_t i = 0; i < pop.members.size(); ++i) append_row(text, pop.generation, i, pop.members[i]);
  }
  write_file(path, text);
}

void write_front_csv(const std::filesystem::path& path, const Population& population,
                     const ArchiveColumns& columns) {
  std::string text = header(columns) + "\n";
  for (std::size_t i = 0; i < population.members.size(); ++i) {
    if (population.members[i].rank == 1) append_row(text, population.generation, i, population.members[i]);
  }
  write_file(path, text);
}

std::vector<ArchiveRow> read_population_csv(const std::filesystem::path& path, std::size_t gene_count,
                                            std::size_t objective_count) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "<file>", "cannot open for reading");
  const std::size_t expected = 2 + gene_count + objective_count + 2;
  std::vector<ArchiveRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    const std::string where = fmt::format("{}:{}", path.string(), line_no);
    if (cells.size() != expected) {
      throw ParseError(where, "row", fmt::format("expected {} columns, found {}", expected, cells.size()));
    }
    ArchiveRow row;
    row.generation = static_cast<int>(parse_real(cells[0], where));
    row.index = static_cast<std::size_t>(parse_real(cells[1], where));
    for (std::size_t g = 0; g < gene_count; ++g) row.individual.genes.push_back(parse_real(cells[2 + g], where));
    for (std::size_t o = 0; o < objective_count; ++o) {
      row.individual.objectives.push_back(parse_real(cells[2 + gene_count + o], where));
    }
    row.individual.rank = static_cast<int>(parse_real(cells[expected - 2], where));
    row.individual.crowding = parse_real(cells[expected - 1], where);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pumatune::moea

#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "fgt/graph.hpp"

namespace fgt {

using Rows = std::vector<std::vector<double>>;

// Plain comma-separated numeric grid, no header. Blank lines are skipped.
Rows read_csv_rows(std::istream& in);
Rows read_csv_rows(const std::filesystem::path& path);
void write_csv_rows(std::ostream& out, const Rows& rows);
void write_csv_rows(const std::filesystem::path& path, const Rows& rows);

AdjacencyMatrix load_adjacency(const std::filesystem::path& path);
void save_adjacency(const std::filesystem::path& path, const AdjacencyMatrix& a);
EdgeProbabilityMatrix load_edge_probabilities(const std::filesystem::path& path);
void save_edge_probabilities(const std::filesystem::path& path, const EdgeProbabilityMatrix& p);

Rows to_rows(const AdjacencyMatrix& a);
Rows to_rows(const EdgeProbabilityMatrix& p);

}  // namespace fgt

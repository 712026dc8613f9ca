#include "fgt/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "fgt/errors.hpp"

namespace fgt {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, std::size_t line_no) {
  cell = trim(cell);
  double value = 0.0;
  const auto* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc() || ptr != end || cell.empty()) {
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": cannot parse '" +
                                            std::string(cell) + "' as a number");
  }
  return value;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  return out;
}

}  // namespace

Rows read_csv_rows(std::istream& in) {
  Rows rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_cell(rest.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Rows read_csv_rows(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_csv_rows(in);
}

void write_csv_rows(std::ostream& out, const Rows& rows) {
  out << std::setprecision(17);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << row[j];
    }
    out << '\n';
  }
}

void write_csv_rows(const std::filesystem::path& path, const Rows& rows) {
  auto out = open_out(path);
  write_csv_rows(out, rows);
}

Rows to_rows(const AdjacencyMatrix& a) {
  Rows rows(a.size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) rows[i][j] = a(i, j) ? 1.0 : 0.0;
  }
  return rows;
}

Rows to_rows(const EdgeProbabilityMatrix& p) {
  Rows rows(p.size(), std::vector<double>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) rows[i][j] = p(i, j);
  }
  return rows;
}

AdjacencyMatrix load_adjacency(const std::filesystem::path& path) {
  return AdjacencyMatrix::from_rows(read_csv_rows(path));
}

void save_adjacency(const std::filesystem::path& path, const AdjacencyMatrix& a) {
  write_csv_rows(path, to_rows(a));
}

EdgeProbabilityMatrix load_edge_probabilities(const std::filesystem::path& path) {
  return EdgeProbabilityMatrix::from_rows(read_csv_rows(path));
}

void save_edge_probabilities(const std::filesystem::path& path, const EdgeProbabilityMatrix& p) {
  write_csv_rows(path, to_rows(p));
}

}  // namespace fgt

#include "skewfa/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace skewfa {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Dataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty file, header row required", 1);
  Dataset data;
  for (const auto& name : split_line(line)) data.columns.push_back(trim(name));
  const std::size_t p = data.columns.size();
  if (p == 0) throw CsvError("header row has no columns", 1);

  std::vector<double> values;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != p)
      throw CsvError("expected " + std::to_string(p) + " cells, got " +
                         std::to_string(cells.size()), lineno);
    for (const auto& cell : cells) {
      const std::string t = trim(cell);
      double v = 0.0;
      const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
      if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw CsvError("non-numeric cell '" + t + "'", lineno);
      values.push_back(v);
    }
  }
  const int n = static_cast<int>(values.size() / p);
  data.y.resize(n, static_cast<int>(p));
  for (int i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) data.y(i, static_cast<int>(j)) = values[i * p + j];
  return data;
}

void write_csv(const std::string& path, const Eigen::MatrixXd& data,
               const std::vector<std::string>& columns,
               const Eigen::VectorXi* labels) {
  if (static_cast<int>(columns.size()) != data.cols())
    throw std::invalid_argument("write_csv: column name count mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (j) out << ',';
    out << columns[j];
  }
  if (labels) out << ",label";
  out << '\n';
  char buf[40];
  for (int i = 0; i < data.rows(); ++i) {
    for (int j = 0; j < data.cols(); ++j) {
      if (j) out << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", data(i, j));
      out << buf;
    }
    if (labels) out << ',' << (*labels)[i];
    out << '\n';
  }
}

}  // namespace skewfa

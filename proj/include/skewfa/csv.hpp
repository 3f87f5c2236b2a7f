#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "skewfa/model.hpp"

namespace skewfa {

/// Malformed CSV input; line is 1-based and includes the header.
class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Strict reader: comma delimiter, '.' decimal, mandatory header row,
/// every cell numeric. Throws CsvError with the offending line number.
Dataset read_csv(const std::string& path);

/// Writes header + data; an optional integer label column is appended.
void write_csv(const std::string& path, const Eigen::MatrixXd& data,
               const std::vector<std::string>& columns,
               const Eigen::VectorXi* labels = nullptr);

}  // namespace skewfa

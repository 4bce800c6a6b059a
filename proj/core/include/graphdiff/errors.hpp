#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphdiff {

/// Node or pair index outside the valid range of a graph.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed edge-list or checkpoint input. `line()` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A computation produced a NaN/inf or left its valid numeric domain.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace graphdiff

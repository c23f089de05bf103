#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhd {

// Root of all library errors. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument values: out-of-range epsilon, s == t, unknown node, ...
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input data that cannot be used: malformed files, empty or unsuitable graphs.
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// Iterative eigensolver ran out of iterations.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate,
                   double residual)
      : NumericError(what + " (residual " + std::to_string(residual) + ")"),
        last_iterate_(std::move(last_iterate)),
        residual_(residual) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
};

// A query exceeded its wall-clock budget.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

}  // namespace bhd

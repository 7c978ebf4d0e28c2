#pragma once

#include <stdexcept>
#include <string>

namespace nbl {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed concrete syntax (formulas, proof scripts, model files).
struct SyntaxError : Error {
  SyntaxError(std::string msg, int line, int column, std::string expected = "")
      : Error(format(msg, line, column, expected)),
        line(line),
        column(column),
        expected(std::move(expected)) {}

  int line;
  int column;
  std::string expected;

 private:
  static std::string format(const std::string& msg, int line, int column,
                            const std::string& expected) {
    std::string s = "syntax error at " + std::to_string(line) + ":" +
                    std::to_string(column) + ": " + msg;
    if (!expected.empty()) s += " (expected " + expected + ")";
    return s;
  }
};

// Ill-formed or inconsistent models, frames, fixtures.
struct ModelError : Error {
  using Error::Error;
};

// An enumeration or truth-table bound was exceeded.
struct BudgetError : Error {
  using Error::Error;
};

}  // namespace nbl

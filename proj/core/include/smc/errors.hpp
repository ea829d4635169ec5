#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace smc {

/// Input violates a documented precondition (non-prime characteristic,
/// mismatched algebras, out-of-range slot, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured search budget would be exceeded. Searches are all-or-nothing,
/// so this is raised instead of returning partial results.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string stage, double space_size)
      : std::runtime_error("budget exceeded in " + stage + " (search space ~" +
                           std::to_string(space_size) + ")"),
        stage_(std::move(stage)),
        size_(space_size) {}
  const std::string& stage() const noexcept { return stage_; }
  double space_size() const noexcept { return size_; }

 private:
  std::string stage_;
  double size_;
};

/// An exhaustive certificate could not be produced within the cap.
class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructed object failed the verification gate it must pass.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input; line/column are 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line = 0, int column = 0)
      : std::runtime_error(format(msg, line, column)), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& msg, int line, int column) {
    if (line == 0) return msg;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg;
  }
  int line_;
  int column_;
};

}  // namespace smc

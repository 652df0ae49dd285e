#ifndef MRMAC_ERRORS_HPP
#define MRMAC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrmac {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad PEO, out-of-range id, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised when a chordal-only routine meets a non-chordal graph. Carries a
/// chordless cycle of length >= 4 as evidence.
class NotChordal : public Error {
 public:
  explicit NotChordal(std::vector<std::size_t> witness)
      : Error("graph is not chordal"), witness_(std::move(witness)) {}
  const std::vector<std::size_t>& witness() const { return witness_; }

 private:
  std::vector<std::size_t> witness_;
};

class NotCollisionFree : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (graph, plan, or experiment config).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what)
      : Error("line " + std::to_string(line) + (field.empty() ? "" : " [" + field + "]") + ": " + what),
        line_(line),
        field_(std::move(field)) {}
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace mrmac

#endif  // MRMAC_ERRORS_HPP

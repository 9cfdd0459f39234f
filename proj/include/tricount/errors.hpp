#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tricount {

/// Input data violates a structural invariant (bad STS, bad configuration).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. The message carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A counting plan produced an inconsistent result (e.g. r not divisible by Q).
class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size guard or implementation bound was exceeded.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(const std::string& what, std::uint64_t iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  std::uint64_t iterations() const { return iterations_; }

 private:
  std::uint64_t iterations_;
};

}  // namespace tricount

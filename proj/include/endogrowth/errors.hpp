#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace endogrowth {

// Argument outside the mathematical domain of a formula (ln of a negative, etc).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Configuration or parameter value outside its allowed range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown by run_scenario when a driver leaves the admissible region.
class PeriodError : public std::runtime_error {
 public:
  PeriodError(long period, const std::string& what)
      : std::runtime_error("period " + std::to_string(period) + ": " + what), period_(period) {}
  long period() const noexcept { return period_; }

 private:
  long period_;
};

class CollinearityError : public std::runtime_error {
 public:
  CollinearityError(std::vector<std::string> columns, const std::string& what)
      : std::runtime_error(what), columns_(std::move(columns)) {}
  const std::vector<std::string>& columns() const noexcept { return columns_; }

 private:
  std::vector<std::string> columns_;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UndefinedStatisticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Header or column layout does not match the declared source schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A data row could not be parsed; carries the 1-based line number.
class RowError : public std::runtime_error {
 public:
  RowError(std::string source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}
  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class ConflictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& destination, const std::string& cause)
      : std::runtime_error(destination + ": " + cause) {}
};

}  // namespace endogrowth

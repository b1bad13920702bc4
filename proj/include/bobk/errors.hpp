#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bobk {

// Base class for every error raised by the library. The CLI maps the two
// families below onto exit codes 2 (bad input) and 3 (numerics gave up).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's domain.
class InputError : public Error {
 public:
  using Error::Error;
};

class InvalidTruncation : public InputError {
 public:
  using InputError::InputError;
};

class AliasingError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidPole : public InputError {
 public:
  using InputError::InputError;
};

class PoleProximity : public InputError {
 public:
  using InputError::InputError;
};

class UndefinedAngle : public InputError {
 public:
  using InputError::InputError;
};

class InconsistentCoordinates : public InputError {
 public:
  using InputError::InputError;
};

// Malformed JSON/CSV; line and column are 1-based.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line, int column)
      : InputError(what + " (line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Numerical machinery could not deliver the requested accuracy.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public NumericalError {
 public:
  ConvergenceFailure(const std::string& what, std::vector<double> previous,
                     std::vector<double> last)
      : NumericalError(what), previous_(std::move(previous)), last_(std::move(last)) {}
  const std::vector<double>& previous() const { return previous_; }
  const std::vector<double>& last() const { return last_; }

 private:
  std::vector<double> previous_;
  std::vector<double> last_;
};

class PhaseDegeneracy : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InvalidSpectrum : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConditioningError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AccuracyGuard : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace bobk

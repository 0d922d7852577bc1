#ifndef CHMP_ERRORS_HPP
#define CHMP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chmp {

/// Malformed input data: dimension mismatch, non-finite entries, empty sets.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid solver or generator configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A geometric primitive was asked to work on a zero-length direction.
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A caller broke a documented precondition (e.g. unverified certificate).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Bad file contents (instance files, IDX archives).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chmp

#endif  // CHMP_ERRORS_HPP

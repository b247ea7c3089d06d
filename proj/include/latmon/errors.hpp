#ifndef LATMON_ERRORS_HPP
#define LATMON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace latmon {

/// Base class of all latmon failures.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An operation would step outside the configured tree bounds.
class TruncationError : public Error {
public:
  using Error::Error;
};

/// A precondition on argument values does not hold.
class DomainError : public Error {
public:
  using Error::Error;
};

/// An exhaustive structure would exceed the configured memory/work budget.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// A run configuration is inconsistent or below required minimums.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed input data (lattice files, descriptions).
class InputError : public Error {
public:
  using Error::Error;
};

}  // namespace latmon

#endif

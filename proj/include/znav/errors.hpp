// Error types shared across the library.
//
// ValidationError: bad inputs, violated preconditions, malformed config.
// DomainError:     a chart point outside the working domain (a validation error).
// NumericalError:  an algorithm failed to meet its tolerance contract.

#ifndef ZNAV_ERRORS_HPP
#define ZNAV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace znav {

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class DomainError : public ValidationError {
 public:
  explicit DomainError(const std::string& msg) : ValidationError(msg) {}
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace znav

#endif

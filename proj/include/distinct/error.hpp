#ifndef DISTINCT_ERROR_HPP
#define DISTINCT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace distinct {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called with arguments that violate its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A serialized document failed to parse or validate.
class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Floating-point evidence contradicts a guarantee that holds in exact arithmetic.
class NumericalError : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace distinct

#endif  // DISTINCT_ERROR_HPP

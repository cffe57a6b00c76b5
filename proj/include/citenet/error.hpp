#ifndef CITENET_ERROR_HPP
#define CITENET_ERROR_HPP

#include <stdexcept>
#include <string>

namespace citenet {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments or configuration from the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A node id that is not part of the graph.
class UnknownNodeError : public DataError {
 public:
  explicit UnknownNodeError(const std::string& id)
      : DataError("unknown node id '" + id + "'") {}
};

/// An estimator was asked for a value it cannot produce (empty interval,
/// zero relations, ratio outside the solvable range).
class EstimateError : public Error {
 public:
  using Error::Error;
};

/// A configured resource budget would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace citenet

#endif  // CITENET_ERROR_HPP

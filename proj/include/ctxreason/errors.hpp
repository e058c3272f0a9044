#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ctxreason {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input the caller can fix (configs, flags, quotas). The CLI exits with 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A config document problem, located by a path such as "attributes[2].values".
class ConfigError : public ValidationError {
 public:
  ConfigError(std::string path, const std::string& message)
      : ValidationError(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Requested sizes cannot be met by the catalog or name pool.
class QuotaError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A query the reasoner cannot answer against the given context
// (unresolvable item reference, attribute absent from every item, ...).
class OracleError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctxreason

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input violated a documented precondition. parameter() names the
// offending input so callers can report which bound failed.
class ValidationError : public Error {
 public:
  ValidationError(std::string parameter, const std::string& message)
      : Error(parameter + ": " + message), parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

// A computation would exceed a configured resource cap (route
// materialization, brute-force enumeration, exact-evaluation state space).
class CapExceededError : public Error {
 public:
  CapExceededError(std::string resource, std::string requested, std::uint64_t limit)
      : Error(resource + " exceeds cap: requested " + requested + ", limit " +
              std::to_string(limit)),
        resource_(std::move(resource)),
        limit_(limit) {}

  const std::string& resource() const noexcept { return resource_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::string resource_;
  std::uint64_t limit_;
};

// Two routes that must agree did not (e.g. run-of-c check vs path check).
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class NoRootError : public Error {
 public:
  using Error::Error;
};

class MalformedTranscriptError : public Error {
 public:
  using Error::Error;
};

}  // namespace qnet

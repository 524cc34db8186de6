#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace greedymine {

// Base for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input value is outside its domain. field() names the offending parameter
// using the command-line spelling (alpha, gamma, r-leader, depth, ...).
class InvalidArgument : public Error {
 public:
  InvalidArgument(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A caller broke a documented precondition of a pure operation.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Relative extra reward is undefined when the baseline revenue is zero.
class UndefinedRer : public Error {
 public:
  UndefinedRer() : Error("relative extra reward undefined: baseline revenue is zero") {}
};

class NoThreshold : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace greedymine

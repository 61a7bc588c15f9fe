#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wanderlust {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Errors caused by bad configuration or usage rather than bad data.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class OutOfGrid : public Error {
 public:
  using Error::Error;
};

class InvalidCell : public Error {
 public:
  using Error::Error;
};

class SelfVisit : public Error {
 public:
  using Error::Error;
};

class FrequencyOutOfRange : public Error {
 public:
  using Error::Error;
};

class NoData : public Error {
 public:
  using Error::Error;
};

class SampleTooLarge : public Error {
 public:
  using Error::Error;
};

class DegenerateFlow : public Error {
 public:
  using Error::Error;
};

class MissingStats : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class BundleError : public Error {
 public:
  using Error::Error;
};

struct ParseIssue {
  std::size_t line = 0;
  std::string message;
};

/// Raised once per input with every offending line collected.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<ParseIssue> issues);

  const std::vector<ParseIssue>& issues() const noexcept { return issues_; }
  std::size_t line() const noexcept { return issues_.empty() ? 0 : issues_.front().line; }

 private:
  std::vector<ParseIssue> issues_;
};

}  // namespace wanderlust

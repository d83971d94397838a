#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace affexp {

/// Base of every error raised by the library. The CLI maps IoError to exit
/// code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input. Carries the 1-based line and column when known (0 = unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates a domain invariant (score range, labels, uniqueness).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or out-of-range configuration (unknown category, bad parameter).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Term lookup against an embedding vocabulary failed.
class OutOfVocabularyError : public Error {
 public:
  explicit OutOfVocabularyError(const std::string& term);

  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

/// Remote embedding provider broke its wire contract (dimension drift, bad JSON).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Remote embedding provider could not be reached or timed out.
class ProviderUnavailableError : public Error {
 public:
  using Error::Error;
};

}  // namespace affexp

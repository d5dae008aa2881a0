#ifndef CITS_ERRORS_HPP
#define CITS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cits {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generator was asked for a size that would produce a multigraph.
class DegenerateSizeError : public Error {
 public:
  using Error::Error;
};

/// Vector length does not match the graph's node count, or an index is out of range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Instance too large for exhaustive enumeration.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cits

#endif  // CITS_ERRORS_HPP

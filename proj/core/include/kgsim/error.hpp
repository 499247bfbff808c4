#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kgsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input. Carries the 1-based line number when it comes from a file.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& node);

  const std::string& node() const noexcept { return node_; }

 private:
  std::string node_;
};

/// Cosine of a zero vector.
class UndefinedSimilarityError : public Error {
 public:
  using Error::Error;
};

}  // namespace kgsim

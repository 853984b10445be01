#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace rleseg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller handed in something outside an operation's precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Malformed file content. Carries the 0-based raster row when one applies.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what,
                      std::optional<std::size_t> row = std::nullopt);

  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  std::optional<std::size_t> row_;
};

/// A run-length row whose runs do not add up to the document width, or
/// that breaks the white-first layout.
class CorruptRow : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Input is not a format this tool reads (e.g. a non-PBM image).
class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace rleseg

#include "rleseg/error.hpp"

namespace rleseg {

namespace {

std::string with_row(const std::string& what, std::optional<std::size_t> row) {
  if (!row) return what;
  return "row " + std::to_string(*row) + ": " + what;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::optional<std::size_t> row)
    : Error(with_row(what, row)), row_(row) {}

}  // namespace rleseg

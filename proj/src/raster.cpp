#include "rleseg/raster.hpp"

#include <algorithm>
#include <atomic>

#include "rleseg/error.hpp"

namespace rleseg {

namespace {
std::atomic<std::size_t> g_materializations{0};
}

Raster::Raster(std::size_t width, std::size_t height)
    : width_(width), height_(height), pixels_(width * height, 0) {
  ++g_materializations;
}

Raster::Raster(std::span<const BitRow> rows) {
  if (rows.empty()) throw InvalidInput("raster needs at least one row");
  width_ = rows.front().size();
  height_ = rows.size();
  if (width_ == 0) throw InvalidInput("raster rows must be non-empty");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width_)
      throw InvalidInput("ragged raster: row " + std::to_string(r) + " has " +
                         std::to_string(rows[r].size()) + " pixels, expected " +
                         std::to_string(width_));
  }
  pixels_.reserve(width_ * height_);
  for (const auto& row : rows)
    for (auto px : row) pixels_.push_back(px ? 1 : 0);
  ++g_materializations;
}

Raster::Raster(const Raster& other)
    : width_(other.width_), height_(other.height_), pixels_(other.pixels_) {
  ++g_materializations;
}

Raster& Raster::operator=(const Raster& other) {
  if (this != &other) {
    width_ = other.width_;
    height_ = other.height_;
    pixels_ = other.pixels_;
    ++g_materializations;
  }
  return *this;
}

BitRow Raster::row_copy(std::size_t r) const {
  auto span = row(r);
  return BitRow(span.begin(), span.end());
}

std::size_t Raster::materializations() noexcept { return g_materializations.load(); }

void Raster::reset_materializations() noexcept { g_materializations.store(0); }

}  // namespace rleseg

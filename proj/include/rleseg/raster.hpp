#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rleseg {

/// One raster row, one byte per pixel. 1 = ink (foreground), 0 = background.
using BitRow = std::vector<std::uint8_t>;

/// Uncompressed binary image, row-major, one byte per pixel.
///
/// Only the oracle, PBM I/O and the overlay writer build these. Every
/// construction (including copies) bumps a process-wide counter so tests can
/// prove that the compressed segmentation path never materialises a page.
class Raster {
 public:
  Raster(std::size_t width, std::size_t height);
  explicit Raster(std::span<const BitRow> rows);

  Raster(const Raster& other);
  Raster& operator=(const Raster& other);
  Raster(Raster&&) noexcept = default;
  Raster& operator=(Raster&&) noexcept = default;
  ~Raster() = default;

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }

  std::uint8_t at(std::size_t row, std::size_t col) const {
    return pixels_[row * width_ + col];
  }
  void set(std::size_t row, std::size_t col, std::uint8_t value) {
    pixels_[row * width_ + col] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> row(std::size_t r) const {
    return {pixels_.data() + r * width_, width_};
  }
  std::span<std::uint8_t> row(std::size_t r) {
    return {pixels_.data() + r * width_, width_};
  }

  BitRow row_copy(std::size_t r) const;

  friend bool operator==(const Raster& a, const Raster& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.pixels_ == b.pixels_;
  }

  /// Number of Raster objects constructed since the last reset.
  static std::size_t materializations() noexcept;
  static void reset_materializations() noexcept;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

}  // namespace rleseg

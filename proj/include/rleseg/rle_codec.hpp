#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "rleseg/raster.hpp"

namespace rleseg {

using RunLength = std::uint64_t;

/// Alternating run lengths for one raster row. Index 0, 2, 4, ... are white
/// runs, index 1, 3, 5, ... black runs. A row that starts with ink has a
/// leading 0.
using RunRow = std::vector<RunLength>;

/// Run-length encode one row. Throws InvalidInput on an empty row.
RunRow encode_row(std::span<const std::uint8_t> row);

/// Expand runs back to pixels. Trailing zero padding is ignored. Throws
/// CorruptRow when the runs do not sum to `width`.
BitRow decode_row(std::span<const RunLength> runs, std::uint64_t width);

/// Compressed binary document: one run row per raster row.
///
/// Rows are stored without trailing zero padding. The constructor validates
/// (and strips padding from) every row, so an RleDocument that exists is
/// always well formed:
///   - width >= 1, height >= 1, rows.size() == height
///   - each row sums to width
///   - only the first slot of a row may be 0
class RleDocument {
 public:
  RleDocument(std::uint64_t width, std::vector<RunRow> rows);

  std::uint64_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return rows_.size(); }
  const std::vector<RunRow>& rows() const noexcept { return rows_; }
  const RunRow& row(std::size_t i) const { return rows_.at(i); }

  /// Total number of stored run entries across all rows.
  std::size_t run_count() const noexcept;

  friend bool operator==(const RleDocument&, const RleDocument&) = default;

 private:
  std::uint64_t width_;
  std::vector<RunRow> rows_;
};

RleDocument encode_image(const Raster& raster);

/// Rows must be non-empty and of equal width (InvalidInput otherwise).
RleDocument encode_image(std::span<const BitRow> rows);

Raster decode_image(const RleDocument& doc);

// RLE CSV: first line "width,height", then one comma-separated run row per
// raster row. Rows may be zero padded on input; output is never padded.

RleDocument read_rle_csv(std::istream& in);
RleDocument read_rle_csv(const std::filesystem::path& path);
void write_rle_csv(const RleDocument& doc, std::ostream& out);
void write_rle_csv(const RleDocument& doc, const std::filesystem::path& path);

}  // namespace rleseg

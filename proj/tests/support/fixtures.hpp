#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "rleseg/band_detection.hpp"
#include "rleseg/raster.hpp"
#include "rleseg/rle_codec.hpp"

namespace rleseg::testing {

// The 13-row, 14-column sample page and its run-length rows, zero-padded
// to five columns.
inline constexpr std::array<std::string_view, 13> kSamplePageBits = {
    "00000000000000", "00110000111110", "01111000111110", "01111000111110",
    "01111000111110", "00110000000000", "10000000000000", "10000000000000",
    "00100001111100", "01110001111100", "01111001111100", "01111100000000",
    "00000000000000",
};

inline const std::vector<RunRow>& sample_page_padded() {
  static const std::vector<RunRow> rows = {
      {14, 0, 0, 0, 0}, {2, 2, 4, 5, 1}, {1, 4, 3, 5, 1}, {1, 4, 3, 5, 1}, {1, 4, 3, 5, 1},
      {2, 2, 10, 0, 0}, {0, 1, 13, 0, 0}, {0, 1, 13, 0, 0}, {2, 1, 4, 5, 2}, {1, 3, 3, 5, 2},
      {1, 4, 2, 5, 2},  {1, 5, 8, 0, 0},  {14, 0, 0, 0, 0},
  };
  return rows;
}

inline RunRow strip_padding(RunRow r) {
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

inline BitRow bits(std::string_view s) {
  BitRow out;
  for (char c : s) out.push_back(c == '1' ? 1 : 0);
  return out;
}

inline std::vector<BitRow> sample_page_rows() {
  std::vector<BitRow> rows;
  for (auto s : kSamplePageBits) rows.push_back(bits(s));
  return rows;
}

/// Separator/text tiling from a list of (kind, width) pairs, top to bottom.
inline BandList tile(const std::vector<std::pair<BandKind, std::size_t>>& parts) {
  std::vector<Band> bands;
  std::size_t row = 0;
  for (auto [kind, width] : parts) {
    bands.push_back({kind, row, row + width - 1});
    row += width;
  }
  return BandList(std::move(bands), row);
}

constexpr auto S = BandKind::Separator;
constexpr auto T = BandKind::Text;

}  // namespace rleseg::testing

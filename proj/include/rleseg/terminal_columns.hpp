#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "rleseg/rle_codec.hpp"
#include "rleseg/scan_stats.hpp"

namespace rleseg {

enum class Side { Left, Right };

std::string_view to_string(Side side) noexcept;
Side side_from_string(std::string_view name);  // "left" / "right"

/// Per-row white depth at one terminal of the page.
///
/// depths.size() equals the document height and every depth lies in
/// [0, width]. The document width is kept alongside because the detection
/// threshold is derived from it.
struct TerminalColumn {
  Side side = Side::Left;
  std::uint64_t width = 0;
  std::vector<std::uint64_t> depths;

  std::size_t height() const noexcept { return depths.size(); }
  friend bool operator==(const TerminalColumn&, const TerminalColumn&) = default;
};

/// First RLE column: the leading white run of every row (0 when the row
/// starts with ink).
TerminalColumn left_column(const RleDocument& doc, ScanStats* stats = nullptr);

/// Virtual last column: the trailing white run of every row. Found with one
/// backward scan to the last non-zero run; if that run sits in a black slot
/// the row ends in ink and the depth is 0. An all-white row yields the width.
TerminalColumn right_column(const RleDocument& doc, ScanStats* stats = nullptr);

TerminalColumn terminal_column(const RleDocument& doc, Side side, ScanStats* stats = nullptr);

}  // namespace rleseg

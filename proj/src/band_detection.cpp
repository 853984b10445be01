#include "rleseg/band_detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rleseg/error.hpp"

namespace rleseg {

void DetectionParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidInput(std::string(name) + " must be positive");
  };
  positive(threshold_divisor, "threshold_divisor");
  positive(large_band_divisor, "large_band_divisor");
  positive(under_sep_factor, "under_sep_factor");
  positive(over_sep_fraction, "over_sep_fraction");
  positive(insertion_factor, "insertion_factor");
  if (threshold_divisor < 1.0) throw InvalidInput("threshold_divisor must be >= 1");
  if (max_recursion_depth == 0) throw InvalidInput("max_recursion_depth must be positive");
}

std::string_view to_string(BandKind kind) noexcept {
  return kind == BandKind::Separator ? "separator" : "text";
}

BandKind band_kind_from_string(std::string_view name) {
  if (name == "separator") return BandKind::Separator;
  if (name == "text") return BandKind::Text;
  throw InvalidInput("unknown band kind '" + std::string(name) + "'");
}

BandList::BandList(std::vector<Band> bands, std::size_t height)
    : bands_(std::move(bands)), height_(height) {
  if (height_ == 0) throw InvalidInput("band list height must be positive");
  if (bands_.empty()) throw InvalidInput("band list must not be empty");
  std::size_t next = 0;
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    const auto& b = bands_[i];
    if (b.start != next || b.end < b.start)
      throw InvalidInput("bands do not tile the page at band " + std::to_string(i));
    if (i > 0 && bands_[i - 1].kind == b.kind)
      throw InvalidInput("adjacent bands of the same kind at band " + std::to_string(i));
    next = b.end + 1;
  }
  if (next != height_) throw InvalidInput("bands do not cover the page height");
}

std::size_t BandList::count(BandKind kind) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(bands_.begin(), bands_.end(), [kind](const Band& b) { return b.kind == kind; }));
}

std::vector<Band> BandList::of_kind(BandKind kind) const {
  std::vector<Band> out;
  std::copy_if(bands_.begin(), bands_.end(), std::back_inserter(out),
               [kind](const Band& b) { return b.kind == kind; });
  return out;
}

std::size_t BandList::index_of(std::size_t row) const {
  if (row >= height_) throw InvalidInput("row " + std::to_string(row) + " outside page");
  auto it = std::partition_point(bands_.begin(), bands_.end(),
                                 [row](const Band& b) { return b.end < row; });
  return static_cast<std::size_t>(it - bands_.begin());
}

std::vector<std::uint8_t> BandList::to_mask() const {
  std::vector<std::uint8_t> mask(height_, 0);
  for (const auto& b : bands_)
    if (b.kind == BandKind::Separator)
      std::fill(mask.begin() + static_cast<std::ptrdiff_t>(b.start),
                mask.begin() + static_cast<std::ptrdiff_t>(b.end) + 1, 1);
  return mask;
}

std::uint64_t default_threshold(std::uint64_t width, const DetectionParams& params) {
  if (width == 0) throw InvalidInput("width must be at least 1");
  const double d = params.threshold_divisor;
  if (!(d >= 1.0)) throw InvalidInput("threshold_divisor must be >= 1");
  std::uint64_t t;
  if (d == std::floor(d) && d < 18446744073709551616.0) {
    t = width / static_cast<std::uint64_t>(d);
  } else {
    t = static_cast<std::uint64_t>(std::floor(static_cast<long double>(width) / d));
  }
  return std::max<std::uint64_t>(t, 1);
}

namespace {

std::vector<std::uint8_t> mask_with_minimum(std::span<const std::uint64_t> depths, std::uint64_t t,
                                            ScanStats* stats, std::uint64_t& minimum) {
  if (depths.empty()) throw InvalidInput("terminal column is empty");
  if (t == 0) throw InvalidInput("threshold must be at least 1");

  minimum = std::numeric_limits<std::uint64_t>::max();
  for (auto d : depths) minimum = std::min(minimum, d);
  count_read(stats, depths.size());

  std::vector<std::uint8_t> mask(depths.size());
  for (std::size_t i = 0; i < depths.size(); ++i) mask[i] = depths[i] - minimum > t ? 1 : 0;
  count_read(stats, depths.size());
  return mask;
}

}  // namespace

std::vector<std::uint8_t> detect_mask(std::span<const std::uint64_t> depths, std::uint64_t t,
                                      ScanStats* stats) {
  std::uint64_t minimum = 0;
  return mask_with_minimum(depths, t, stats, minimum);
}

std::vector<std::uint8_t> detect_mask(const TerminalColumn& column, std::uint64_t t,
                                      ScanStats* stats) {
  return detect_mask(std::span<const std::uint64_t>(column.depths), t, stats);
}

BandList mask_to_bands(std::span<const std::uint8_t> mask, std::size_t height) {
  if (mask.size() != height)
    throw InvalidInput("mask length " + std::to_string(mask.size()) + " != height " +
                       std::to_string(height));
  if (height == 0) throw InvalidInput("cannot group an empty mask");
  std::vector<Band> bands;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= height; ++i) {
    if (i == height || (mask[i] != 0) != (mask[start] != 0)) {
      bands.push_back({mask[start] ? BandKind::Separator : BandKind::Text, start, i - 1});
      start = i;
    }
  }
  return BandList(std::move(bands), height);
}

BandList detect_bands(const TerminalColumn& column, const DetectionParams& params,
                      ScanStats* stats) {
  const auto t = default_threshold(column.width, params);
  std::uint64_t minimum = 0;
  auto mask = mask_with_minimum(column.depths, t, stats, minimum);
  // Every row blank: the whole page is one separator, not one text line.
  if (minimum >= column.width) std::fill(mask.begin(), mask.end(), 1);
  return mask_to_bands(mask, column.height());
}

}  // namespace rleseg

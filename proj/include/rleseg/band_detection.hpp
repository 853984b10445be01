#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rleseg/scan_stats.hpp"
#include "rleseg/terminal_columns.hpp"

namespace rleseg {

/// Tunables for band detection and refinement.
struct DetectionParams {
  double threshold_divisor = 25.0;   // t = width / threshold_divisor
  double large_band_divisor = 10.0;  // bands wider than height / this go straight to ROI
  double under_sep_factor = 2.0;     // ROI when wider than factor x average separator width
  std::size_t max_recursion_depth = 8;
  double over_sep_fraction = 0.5;    // text slivers thinner than fraction x median are merged
  double insertion_factor = 2.0;     // text bands wider than factor x median get re-examined

  /// Throws InvalidInput unless every field is positive and
  /// threshold_divisor >= 1.
  void validate() const;
};

enum class BandKind { Separator, Text };

std::string_view to_string(BandKind kind) noexcept;
BandKind band_kind_from_string(std::string_view name);

/// Inclusive row interval [start, end].
struct Band {
  BandKind kind = BandKind::Text;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t width() const noexcept { return end - start + 1; }
  bool contains(std::size_t row) const noexcept { return start <= row && row <= end; }
  friend bool operator==(const Band&, const Band&) = default;
};

/// Alternating Separator/Text bands that tile [0, height) exactly.
class BandList {
 public:
  /// Validates the tiling; throws InvalidInput on gaps, overlaps, empty
  /// bands or two adjacent bands of the same kind.
  BandList(std::vector<Band> bands, std::size_t height);

  const std::vector<Band>& bands() const noexcept { return bands_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bands_.size(); }
  const Band& operator[](std::size_t i) const { return bands_[i]; }

  std::size_t count(BandKind kind) const noexcept;
  std::vector<Band> of_kind(BandKind kind) const;

  /// Index of the band containing `row`.
  std::size_t index_of(std::size_t row) const;

  /// 1 for separator rows, 0 for text rows.
  std::vector<std::uint8_t> to_mask() const;

  friend bool operator==(const BandList&, const BandList&) = default;

 private:
  std::vector<Band> bands_;
  std::size_t height_;
};

/// floor(width / threshold_divisor), never below 1.
std::uint64_t default_threshold(std::uint64_t width, const DetectionParams& params);

/// Separator labelling of a column: mask[i] = 1 iff depth[i] - min(depths) > t.
/// Two passes over the input (one for the minimum, one for the labels).
std::vector<std::uint8_t> detect_mask(std::span<const std::uint64_t> depths, std::uint64_t t,
                                      ScanStats* stats = nullptr);
std::vector<std::uint8_t> detect_mask(const TerminalColumn& column, std::uint64_t t,
                                      ScanStats* stats = nullptr);

/// Groups maximal runs of 1 into Separator bands and of 0 into Text bands.
BandList mask_to_bands(std::span<const std::uint8_t> mask, std::size_t height);

/// detect_mask with the default threshold, followed by mask_to_bands. A
/// column whose every row is blank (depth == width) is a single separator.
BandList detect_bands(const TerminalColumn& column, const DetectionParams& params,
                      ScanStats* stats = nullptr);

}  // namespace rleseg

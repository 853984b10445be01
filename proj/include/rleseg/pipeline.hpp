#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rleseg/band_detection.hpp"
#include "rleseg/band_refinement.hpp"
#include "rleseg/rle_codec.hpp"
#include "rleseg/separator_points.hpp"
#include "rleseg/terminal_columns.hpp"

namespace rleseg {

struct PipelineConfig {
  DetectionParams params;
  RefinementOptions refinement;
  bool left = true;
  bool right = true;
  std::optional<std::size_t> tolerance;  // evaluation override; unused by segment()

  /// Throws InvalidInput when no side is selected or params are invalid.
  void validate() const;
};

struct SideResult {
  Side side;
  BandList initial_bands;  // straight out of band detection
  BandList bands;          // after refinement
  RefinementTrace trace;
  SeparatorPoints points;
};

struct SegmentationResult {
  std::uint64_t width = 0;
  std::size_t height = 0;
  std::vector<SideResult> sides;  // left before right

  const SideResult* find(Side side) const noexcept;
};

/// Band detection, refinement and point assembly for the selected terminals,
/// given both terminal columns.
SegmentationResult segment_columns(const TerminalColumn& left, const TerminalColumn& right,
                                   const PipelineConfig& config);

/// Runs the whole pipeline on the compressed document. Only the first run
/// and the last non-zero run of each row are read; the page is never
/// decoded.
SegmentationResult segment(const RleDocument& doc, const PipelineConfig& config);

}  // namespace rleseg

#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "rleseg/evaluation.hpp"
#include "rleseg/pipeline.hpp"
#include "rleseg/raster.hpp"

namespace rleseg {

struct LineSpec {
  std::size_t top = 0;
  std::size_t bottom = 0;  // inclusive
  std::size_t left_margin = 0;
  std::size_t right_margin = 0;
  double ink_density = 0.3;  // speckle density inside the line box, (0, 1]
  friend bool operator==(const LineSpec&, const LineSpec&) = default;
};

/// Lines `upper` and `upper + 1` are joined by a stroke at the left start,
/// hiding their gap from the left terminal.
struct TouchAtLeft {
  std::size_t upper = 0;
  std::size_t lower = 1;
  friend bool operator==(const TouchAtLeft&, const TouchAtLeft&) = default;
};

/// Line `line` starts `depth` pixels further right than its margin says.
struct LeftIndent {
  std::size_t line = 0;
  std::size_t depth = 0;
  friend bool operator==(const LeftIndent&, const LeftIndent&) = default;
};

/// `rows` rows of line `line`, starting a fifth of the way down the line,
/// lose their ink near the left terminal (a glyph concavity).
struct ConcaveSliver {
  std::size_t line = 0;
  std::size_t rows = 0;
  friend bool operator==(const ConcaveSliver&, const ConcaveSliver&) = default;
};

using Artifact = std::variant<TouchAtLeft, LeftIndent, ConcaveSliver>;

struct PageSpec {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<LineSpec> lines;
  std::uint64_t seed = 0;
  std::vector<Artifact> artifacts;

  /// Throws InvalidSpec on malformed geometry, including overlapping lines
  /// that no TouchAtLeft bridges.
  void validate() const;
  friend bool operator==(const PageSpec&, const PageSpec&) = default;
};

struct GeneratedPage {
  Raster raster;
  GroundTruth left;
  GroundTruth right;
};

/// Renders the page. Deterministic for a given spec (including seed). Ground
/// truth points are gap midpoints plus the bottom-margin midpoint; the top
/// margin point is left out, as assemble() does.
GeneratedPage generate(const PageSpec& spec);

/// Ground truth alone, without rendering.
GroundTruth ground_truth(const PageSpec& spec, Side side);

struct RandomPageOptions {
  std::size_t min_width = 400;
  std::size_t max_width = 1000;
  std::size_t min_lines = 4;
  std::size_t max_lines = 9;
  bool touch_at_left = false;
  bool concave_sliver = false;
  bool left_indent = false;
};

/// A random page with uniform-ish line pitch. Clean unless the options ask
/// for artifacts, in which case exactly one of each requested kind is added.
PageSpec random_page_spec(std::uint64_t seed, const RandomPageOptions& options = {});

struct OracleResult {
  std::vector<std::uint64_t> left_depths;
  std::vector<std::uint64_t> right_depths;
  std::vector<SeparatorPoints> sides;  // left before right, per config
};

/// Segmentation straight from pixels: leading/trailing zero counts per row
/// and its own thresholding, followed by the shared refinement and point
/// assembly. Used to cross-check the compressed pipeline.
OracleResult oracle_segment(const Raster& raster, const PipelineConfig& config);

}  // namespace rleseg

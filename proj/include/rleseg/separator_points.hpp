#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "rleseg/band_detection.hpp"
#include "rleseg/band_refinement.hpp"
#include "rleseg/terminal_columns.hpp"

namespace rleseg {

enum class Provenance { Detected, Inserted };

std::string_view to_string(Provenance p) noexcept;
Provenance provenance_from_string(std::string_view name);

/// Separator rows at one terminal, strictly increasing, each tagged with
/// where it came from.
struct SeparatorPoints {
  Side side = Side::Left;
  std::size_t height = 0;
  std::vector<std::size_t> points;
  std::vector<Provenance> provenance;  // parallel to points

  std::size_t size() const noexcept { return points.size(); }
  friend bool operator==(const SeparatorPoints&, const SeparatorPoints&) = default;
};

/// floor((start + end) / 2). Throws InvalidInput for a text band.
std::size_t band_midpoint(const Band& band);

/// Midpoints of every separator band except the one holding row 0 (the top
/// margin), merged with the trace's inserted rows.
SeparatorPoints assemble(const BandList& bands, const RefinementTrace& trace, Side side);

}  // namespace rleseg

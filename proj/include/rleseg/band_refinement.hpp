#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "rleseg/band_detection.hpp"
#include "rleseg/terminal_columns.hpp"

namespace rleseg {

enum class RoiTag {
  OversizedBand,  // wider than height / large_band_divisor
  WideBand,       // wider than under_sep_factor x average separator width
};

std::string_view to_string(RoiTag tag) noexcept;

struct RoiInterval {
  std::size_t start = 0;
  std::size_t end = 0;
  RoiTag tag = RoiTag::WideBand;
  friend bool operator==(const RoiInterval&, const RoiInterval&) = default;
};

/// Separator bands flagged as likely under-separation, in row order.
struct RoiSet {
  std::vector<RoiInterval> intervals;

  bool empty() const noexcept { return intervals.empty(); }
  std::size_t size() const noexcept { return intervals.size(); }
};

/// Instrumentation for find_under_separation: which bands fed the average.
struct AverageProbe {
  std::vector<Band> averaged;
  std::vector<Band> oversized;
};

/// Corrections applied while refining one terminal.
struct RefinementTrace {
  std::vector<Band> deleted_bands;               // separators removed as over-separation
  std::vector<std::size_t> inserted_separators;  // rows added inside merged text bands
  std::size_t recursion_depth_used = 0;
  bool depth_cap_hit = false;

  void absorb(const RefinementTrace& other);
};

/// Twice the median width of the bands of `kind` (kept doubled so an even
/// count stays an exact integer). 0 when there are no such bands.
std::uint64_t twice_median_width(const BandList& bands, BandKind kind);

/// Flags oversized separator bands first and leaves them out of the average,
/// then flags the remaining bands that are more than under_sep_factor times
/// the average width. With no bands left to average, only oversized bands
/// are returned.
RoiSet find_under_separation(const BandList& bands, std::size_t height,
                             const DetectionParams& params, AverageProbe* probe = nullptr);

/// Re-runs the separator labelling inside each ROI with a local minimum and
/// the page-wide threshold, then looks for ROI again, until a level changes
/// nothing or max_recursion_depth levels have run.
///
/// An ROI slice whose labelling comes back all-text (its depths are uniform
/// to within t) is left as a separator band: it has no interior text line to
/// expose.
BandList refine_roi(const TerminalColumn& column, const BandList& bands, const RoiSet& roi,
                    const DetectionParams& params, RefinementTrace* trace = nullptr);

/// Merges text slivers (width < over_sep_fraction x median text width) into
/// their neighbour by deleting the thinner adjacent separator. The median is
/// recomputed after every deletion.
std::pair<BandList, RefinementTrace> remove_over_separation(const BandList& bands,
                                                            const DetectionParams& params);

/// For every text band wider than insertion_factor x median text width,
/// runs band detection on the opposite terminal's column over the same rows
/// and records the midpoint of every interior separator band it finds. The
/// band list itself is returned unchanged; insertions live in the trace.
std::pair<BandList, RefinementTrace> insert_missing_separators(
    const TerminalColumn& own, const TerminalColumn& opposite, const BandList& bands,
    const DetectionParams& params);

struct RefinementOptions {
  bool enable_deletion = true;
  bool enable_insertion = true;
  bool deletion_first = true;
};

struct RefinedBands {
  BandList bands;
  RefinementTrace trace;
};

/// ROI recursion, then over-separation deletion and separator insertion in
/// the configured order. `opposite` may be null, which disables insertion.
RefinedBands refine_bands(const TerminalColumn& own, const TerminalColumn* opposite,
                          const BandList& bands, const DetectionParams& params,
                          const RefinementOptions& options = {});

}  // namespace rleseg

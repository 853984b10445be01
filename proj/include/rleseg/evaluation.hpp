#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rleseg/band_detection.hpp"
#include "rleseg/band_refinement.hpp"
#include "rleseg/separator_points.hpp"
#include "rleseg/terminal_columns.hpp"

namespace rleseg {

/// Exact non-negative fraction. Rates are kept as a ratio of counts so that
/// value * den == num holds without float drift.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  double percent() const noexcept { return 100.0 * value(); }
  /// 100 * num / den rounded half-up to `decimals` places, e.g. "97.09".
  std::string percent_string(int decimals = 2) const;
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// Text line extent in a ground truth, inclusive rows.
struct LineExtent {
  std::size_t top = 0;
  std::size_t bottom = 0;
  friend bool operator==(const LineExtent&, const LineExtent&) = default;
};

struct GroundTruth {
  Side side = Side::Left;
  std::size_t total_lines = 0;
  std::vector<std::size_t> points;  // strictly increasing
  std::vector<LineExtent> lines;    // optional; enables over-separation localisation

  /// Throws InvalidInput if points are not strictly increasing.
  void validate() const;
};

struct MatchPair {
  std::size_t detected = 0;  // row
  std::size_t truth = 0;     // row
  std::size_t distance = 0;
  friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

struct Matching {
  std::vector<MatchPair> pairs;  // sorted by detected row
  std::vector<std::size_t> unmatched_detected;
  std::vector<std::size_t> unmatched_truth;

  std::size_t o2o() const noexcept { return pairs.size(); }
};

/// One-to-one matching within `tolerance` rows. Candidate pairs are taken
/// greedily in order of (distance, detected position, truth position).
Matching match_points(std::span<const std::size_t> detected, std::span<const std::size_t> truth,
                      std::size_t tolerance);

/// o2o / N. Throws InvalidInput when N == 0 or o2o > N.
Ratio detection_rate(std::uint64_t o2o, std::uint64_t n);

/// Under-separation rate (fraction; percent() gives the TN figure).
Ratio tn_rate(std::uint64_t under_count, std::uint64_t total_lines);

/// Over-separation rate (fraction; percent() gives the FP figure).
Ratio fp_rate(std::uint64_t over_count, std::uint64_t total_lines);

/// Separator points per terminal on a page with `total_lines` lines: the
/// gaps between lines plus top and bottom margins.
std::uint64_t expected_point_count(std::uint64_t total_lines);

/// Half the median text-band width, never below 3 rows.
std::size_t default_tolerance(const BandList& bands);

struct EvalReport {
  Side side = Side::Left;
  std::size_t tolerance = 0;
  std::size_t o2o = 0;
  std::size_t n = 0;            // ground-truth points
  std::size_t total_lines = 0;
  Ratio dr;
  std::size_t under_count = 0;
  std::size_t over_count = 0;
  Ratio tn;
  Ratio fp;
  std::size_t corrected_under = 0;  // separators inserted by refinement
  std::size_t corrected_over = 0;   // separators deleted by refinement
  std::vector<MatchPair> matches;
  std::vector<std::size_t> unmatched_truth;
  std::vector<std::size_t> unmatched_detected;
};

/// Matches, then attributes residual misses. An unmatched truth point that
/// falls inside a detected text band counts as under-separation; an
/// unmatched detected point inside a truth line counts as over-separation.
/// Without `bands` (resp. truth.lines) every unmatched point of that kind
/// is counted.
EvalReport evaluate(const SeparatorPoints& detected, const GroundTruth& truth,
                    std::size_t tolerance, const BandList* bands = nullptr,
                    const RefinementTrace* trace = nullptr);

/// Page reports summed before the rates are taken.
struct EvalTotals {
  std::uint64_t o2o = 0;
  std::uint64_t n = 0;
  std::uint64_t total_lines = 0;
  std::uint64_t under_count = 0;
  std::uint64_t over_count = 0;

  void add(const EvalReport& report);
  Ratio dr() const { return detection_rate(o2o, n); }
  Ratio tn() const { return tn_rate(under_count, total_lines); }
  Ratio fp() const { return fp_rate(over_count, total_lines); }
};

}  // namespace rleseg

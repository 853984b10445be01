#include "rleseg/band_refinement.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "rleseg/error.hpp"

namespace rleseg {

namespace {

using Wide = long double;

// Rebuilds a tiling after some bands changed kind: adjacent bands of equal
// kind are fused.
std::vector<Band> coalesce(const std::vector<Band>& bands) {
  std::vector<Band> out;
  for (const auto& b : bands) {
    if (!out.empty() && out.back().kind == b.kind) {
      out.back().end = b.end;
    } else {
      out.push_back(b);
    }
  }
  return out;
}

void check_roi_inside_separators(const BandList& bands, const RoiSet& roi) {
  for (const auto& iv : roi.intervals) {
    if (iv.end < iv.start || iv.end >= bands.height())
      throw InvalidInput("ROI interval outside the page");
    const auto& band = bands[bands.index_of(iv.start)];
    if (band.kind != BandKind::Separator || iv.end > band.end)
      throw InvalidInput("ROI interval [" + std::to_string(iv.start) + ", " +
                         std::to_string(iv.end) + "] is not inside a separator band");
  }
}

}  // namespace

std::string_view to_string(RoiTag tag) noexcept {
  return tag == RoiTag::OversizedBand ? "oversized" : "wide";
}

void RefinementTrace::absorb(const RefinementTrace& other) {
  deleted_bands.insert(deleted_bands.end(), other.deleted_bands.begin(),
                       other.deleted_bands.end());
  inserted_separators.insert(inserted_separators.end(), other.inserted_separators.begin(),
                             other.inserted_separators.end());
  std::sort(inserted_separators.begin(), inserted_separators.end());
  recursion_depth_used = std::max(recursion_depth_used, other.recursion_depth_used);
  depth_cap_hit = depth_cap_hit || other.depth_cap_hit;
}

std::uint64_t twice_median_width(const BandList& bands, BandKind kind) {
  std::vector<std::uint64_t> widths;
  for (const auto& b : bands.bands())
    if (b.kind == kind) widths.push_back(b.width());
  if (widths.empty()) return 0;
  const auto n = widths.size();
  std::nth_element(widths.begin(), widths.begin() + static_cast<std::ptrdiff_t>(n / 2),
                   widths.end());
  const auto upper = widths[n / 2];
  if (n % 2 == 1) return 2 * upper;
  const auto lower =
      *std::max_element(widths.begin(), widths.begin() + static_cast<std::ptrdiff_t>(n / 2));
  return lower + upper;
}

RoiSet find_under_separation(const BandList& bands, std::size_t height,
                             const DetectionParams& params, AverageProbe* probe) {
  if (height == 0) throw InvalidInput("height must be positive");
  RoiSet roi;
  std::vector<Band> kept;
  std::uint64_t width_sum = 0;
  for (const auto& b : bands.bands()) {
    if (b.kind != BandKind::Separator) continue;
    // width > height / divisor, compared without dividing
    if (static_cast<Wide>(b.width()) * params.large_band_divisor > static_cast<Wide>(height)) {
      roi.intervals.push_back({b.start, b.end, RoiTag::OversizedBand});
      if (probe) probe->oversized.push_back(b);
    } else {
      kept.push_back(b);
      width_sum += b.width();
      if (probe) probe->averaged.push_back(b);
    }
  }
  if (!kept.empty()) {
    // width > factor * (sum / count)  <=>  width * count > factor * sum
    const auto count = static_cast<Wide>(kept.size());
    const auto limit = static_cast<Wide>(params.under_sep_factor) * static_cast<Wide>(width_sum);
    for (const auto& b : kept)
      if (static_cast<Wide>(b.width()) * count > limit)
        roi.intervals.push_back({b.start, b.end, RoiTag::WideBand});
  }
  std::sort(roi.intervals.begin(), roi.intervals.end(),
            [](const RoiInterval& a, const RoiInterval& b) { return a.start < b.start; });
  return roi;
}

BandList refine_roi(const TerminalColumn& column, const BandList& bands, const RoiSet& roi,
                    const DetectionParams& params, RefinementTrace* trace) {
  if (column.height() != bands.height())
    throw InvalidInput("column and band list heights differ");
  check_roi_inside_separators(bands, roi);

  const auto t = default_threshold(column.width, params);
  const std::span<const std::uint64_t> depths(column.depths);
  BandList current = bands;
  RoiSet pending = roi;
  std::size_t levels = 0;
  bool cap_hit = false;

  while (!pending.empty()) {
    if (levels == params.max_recursion_depth) {
      cap_hit = true;
      break;
    }
    ++levels;
    auto mask = current.to_mask();
    bool changed = false;
    for (const auto& iv : pending.intervals) {
      const auto local = detect_mask(depths.subspan(iv.start, iv.end - iv.start + 1), t);
      if (std::none_of(local.begin(), local.end(), [](auto v) { return v != 0; })) continue;
      std::copy(local.begin(), local.end(), mask.begin() + static_cast<std::ptrdiff_t>(iv.start));
      changed = true;
    }
    if (!changed) break;
    current = mask_to_bands(mask, bands.height());
    pending = find_under_separation(current, current.height(), params);
  }

  if (trace) {
    trace->recursion_depth_used = std::max(trace->recursion_depth_used, levels);
    trace->depth_cap_hit = trace->depth_cap_hit || cap_hit;
  }
  return current;
}

std::pair<BandList, RefinementTrace> remove_over_separation(const BandList& bands,
                                                            const DetectionParams& params) {
  RefinementTrace trace;
  BandList current = bands;
  const auto fraction = static_cast<Wide>(params.over_sep_fraction);

  while (current.count(BandKind::Text) > 1) {
    const auto med2 = static_cast<Wide>(twice_median_width(current, BandKind::Text));
    const auto& list = current.bands();

    // Thinnest sliver first; earliest wins ties.
    std::optional<std::size_t> sliver;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].kind != BandKind::Text) continue;
      // width < fraction * median  <=>  2 * width < fraction * (2 * median)
      if (2 * static_cast<Wide>(list[i].width()) >= fraction * med2) continue;
      if (!sliver || list[i].width() < list[*sliver].width()) sliver = i;
    }
    if (!sliver) break;

    const std::size_t i = *sliver;
    const bool has_above = i > 0;
    const bool has_below = i + 1 < list.size();
    if (!has_above && !has_below) break;
    std::size_t victim;
    if (has_above && has_below) {
      victim = list[i + 1].width() < list[i - 1].width() ? i + 1 : i - 1;
    } else {
      victim = has_above ? i - 1 : i + 1;
    }

    trace.deleted_bands.push_back(list[victim]);
    auto edited = list;
    edited[victim].kind = BandKind::Text;
    current = BandList(coalesce(edited), current.height());
  }
  return {current, std::move(trace)};
}

std::pair<BandList, RefinementTrace> insert_missing_separators(
    const TerminalColumn& own, const TerminalColumn& opposite, const BandList& bands,
    const DetectionParams& params) {
  if (own.height() != bands.height() || opposite.height() != bands.height())
    throw InvalidInput("terminal columns must match the band list height");

  RefinementTrace trace;
  const auto med2 = static_cast<Wide>(twice_median_width(bands, BandKind::Text));
  const auto factor = static_cast<Wide>(params.insertion_factor);
  const auto t = default_threshold(opposite.width, params);
  const std::span<const std::uint64_t> depths(opposite.depths);

  for (const auto& band : bands.bands()) {
    if (band.kind != BandKind::Text) continue;
    // width > factor * median  <=>  2 * width > factor * (2 * median)
    if (!(2 * static_cast<Wide>(band.width()) > factor * med2)) continue;
    const auto slice = depths.subspan(band.start, band.width());
    const auto local = mask_to_bands(detect_mask(slice, t), slice.size());
    for (const auto& sub : local.bands()) {
      if (sub.kind != BandKind::Separator) continue;
      if (sub.start == 0 || sub.end + 1 == slice.size()) continue;  // touches the band edge
      trace.inserted_separators.push_back(band.start + (sub.start + sub.end) / 2);
    }
  }
  return {bands, std::move(trace)};
}

RefinedBands refine_bands(const TerminalColumn& own, const TerminalColumn* opposite,
                          const BandList& bands, const DetectionParams& params,
                          const RefinementOptions& options) {
  params.validate();
  RefinementTrace trace;
  const auto roi = find_under_separation(bands, bands.height(), params);
  BandList current = refine_roi(own, bands, roi, params, &trace);

  auto run_deletion = [&] {
    if (!options.enable_deletion) return;
    auto [next, t] = remove_over_separation(current, params);
    current = std::move(next);
    trace.absorb(t);
  };
  auto run_insertion = [&] {
    if (!options.enable_insertion || opposite == nullptr) return;
    auto [next, t] = insert_missing_separators(own, *opposite, current, params);
    current = std::move(next);
    trace.absorb(t);
  };

  if (options.deletion_first) {
    run_deletion();
    run_insertion();
  } else {
    run_insertion();
    run_deletion();
  }
  return {std::move(current), std::move(trace)};
}

}  // namespace rleseg

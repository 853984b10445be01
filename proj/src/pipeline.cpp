#include "rleseg/pipeline.hpp"

#include "rleseg/error.hpp"

namespace rleseg {

void PipelineConfig::validate() const {
  if (!left && !right) throw InvalidInput("select at least one side");
  params.validate();
}

const SideResult* SegmentationResult::find(Side side) const noexcept {
  for (const auto& s : sides)
    if (s.side == side) return &s;
  return nullptr;
}

SegmentationResult segment_columns(const TerminalColumn& left, const TerminalColumn& right,
                                   const PipelineConfig& config) {
  config.validate();
  if (left.height() != right.height() || left.width != right.width)
    throw InvalidInput("terminal columns disagree on page size");

  SegmentationResult result;
  result.width = left.width;
  result.height = left.height();

  auto run_side = [&](const TerminalColumn& own, const TerminalColumn& opposite) {
    auto initial = detect_bands(own, config.params);
    auto refined = refine_bands(own, &opposite, initial, config.params, config.refinement);
    auto points = assemble(refined.bands, refined.trace, own.side);
    result.sides.push_back(SideResult{own.side, std::move(initial), std::move(refined.bands),
                                      std::move(refined.trace), std::move(points)});
  };
  if (config.left) run_side(left, right);
  if (config.right) run_side(right, left);
  return result;
}

SegmentationResult segment(const RleDocument& doc, const PipelineConfig& config) {
  return segment_columns(left_column(doc), right_column(doc), config);
}

}  // namespace rleseg

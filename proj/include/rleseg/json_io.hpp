#pragma once

#include <optional>

#include "json.hpp"
#include "rleseg/evaluation.hpp"
#include "rleseg/pipeline.hpp"
#include "rleseg/synthetic_corpus.hpp"

namespace rleseg {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Serialisation of the tool's JSON documents. Every top-level document
// carries "schema": 1. Readers throw ParseError on schema violations.

Json to_json(const DetectionParams& params);
Json to_json(const Band& band);
Json to_json(const BandList& bands);
Json to_json(const RefinementTrace& trace);
Json to_json(const SideResult& side);
Json to_json(const SegmentationResult& result, const PipelineConfig& config);

Json to_json(const GroundTruth& truth);
GroundTruth ground_truth_from_json(const Json& j);

Json to_json(const EvalReport& report);

Json to_json(const PageSpec& spec);
PageSpec page_spec_from_json(const Json& j);

/// One terminal's worth of a segmentation document.
struct DetectedSide {
  SeparatorPoints points;
  std::optional<BandList> bands;
  std::optional<RefinementTrace> trace;
};

/// Accepts either a full segmentation document ({"sides": {...}}) or a bare
/// {"side": ..., "points": [...]} object. Returns nullopt when the document
/// has no entry for `side`.
std::optional<DetectedSide> detected_side_from_json(const Json& j, Side side);

}  // namespace rleseg

#include "rleseg/json_io.hpp"

#include <string>

#include "rleseg/error.hpp"

namespace rleseg {

namespace {

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

std::vector<std::size_t> get_rows(const Json& j, const char* key) {
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  std::vector<std::size_t> out;
  for (const auto& v : arr) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      throw ParseError(std::string("field '") + key + "' must hold non-negative integers");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

void check_schema(const Json& j) {
  if (j.contains("schema") && j.at("schema") != kSchemaVersion)
    throw ParseError("unsupported schema version " + j.at("schema").dump());
}

Band band_from_json(const Json& j) {
  try {
    return Band{band_kind_from_string(get_field<std::string>(j, "kind")),
                get_field<std::size_t>(j, "start"), get_field<std::size_t>(j, "end")};
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Json to_json(const DetectionParams& p) {
  return Json{{"threshold_divisor", p.threshold_divisor},
              {"large_band_divisor", p.large_band_divisor},
              {"under_sep_factor", p.under_sep_factor},
              {"max_recursion_depth", p.max_recursion_depth},
              {"over_sep_fraction", p.over_sep_fraction},
              {"insertion_factor", p.insertion_factor}};
}

Json to_json(const Band& b) {
  return Json{{"kind", to_string(b.kind)}, {"start", b.start}, {"end", b.end}, {"width", b.width()}};
}

Json to_json(const BandList& bands) {
  Json arr = Json::array();
  for (const auto& b : bands.bands()) arr.push_back(to_json(b));
  return arr;
}

Json to_json(const RefinementTrace& trace) {
  Json deleted = Json::array();
  for (const auto& b : trace.deleted_bands) deleted.push_back(to_json(b));
  return Json{{"deleted_bands", deleted},
              {"inserted_separators", trace.inserted_separators},
              {"recursion_depth_used", trace.recursion_depth_used},
              {"depth_cap_hit", trace.depth_cap_hit}};
}

Json to_json(const SideResult& side) {
  Json prov = Json::array();
  for (auto p : side.points.provenance) prov.push_back(to_string(p));
  return Json{{"side", to_string(side.side)},
              {"points", side.points.points},
              {"provenance", prov},
              {"bands", to_json(side.bands)},
              {"initial_bands", to_json(side.initial_bands)},
              {"trace", to_json(side.trace)}};
}

Json to_json(const SegmentationResult& result, const PipelineConfig& config) {
  Json params = to_json(config.params);
  params["threshold"] = default_threshold(result.width, config.params);
  params["enable_deletion"] = config.refinement.enable_deletion;
  params["enable_insertion"] = config.refinement.enable_insertion;
  params["deletion_first"] = config.refinement.deletion_first;
  Json sides = Json::object();
  for (const auto& s : result.sides) sides[std::string(to_string(s.side))] = to_json(s);
  return Json{{"schema", kSchemaVersion},
              {"width", result.width},
              {"height", result.height},
              {"params", params},
              {"sides", sides}};
}

Json to_json(const GroundTruth& truth) {
  Json j{{"schema", kSchemaVersion},
         {"side", to_string(truth.side)},
         {"total_lines", truth.total_lines},
         {"points", truth.points}};
  if (!truth.lines.empty()) {
    Json lines = Json::array();
    for (const auto& l : truth.lines) lines.push_back(Json::array({l.top, l.bottom}));
    j["lines"] = lines;
  }
  return j;
}

GroundTruth ground_truth_from_json(const Json& j) {
  check_schema(j);
  GroundTruth truth;
  try {
    truth.side = side_from_string(get_field<std::string>(j, "side"));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
  truth.total_lines = get_field<std::size_t>(j, "total_lines");
  if (!j.contains("points")) throw ParseError("missing field 'points'");
  truth.points = get_rows(j, "points");
  if (j.contains("lines")) {
    for (const auto& l : j.at("lines")) {
      if (!l.is_array() || l.size() != 2 || !l[0].is_number_unsigned() || !l[1].is_number_unsigned())
        throw ParseError("'lines' entries must be [top, bottom]");
      truth.lines.push_back({l[0].get<std::size_t>(), l[1].get<std::size_t>()});
    }
  }
  try {
    truth.validate();
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
  return truth;
}

Json to_json(const EvalReport& r) {
  Json matches = Json::array();
  for (const auto& m : r.matches)
    matches.push_back(Json{{"detected", m.detected}, {"truth", m.truth}, {"distance", m.distance}});
  return Json{{"side", to_string(r.side)},
              {"tolerance", r.tolerance},
              {"o2o", r.o2o},
              {"N", r.n},
              {"total_lines", r.total_lines},
              {"dr", r.dr.value()},
              {"dr_percent", r.dr.percent_string()},
              {"under_count", r.under_count},
              {"over_count", r.over_count},
              {"tn", r.tn.percent()},
              {"tn_percent", r.tn.percent_string()},
              {"fp", r.fp.percent()},
              {"fp_percent", r.fp.percent_string()},
              {"corrected_under", r.corrected_under},
              {"corrected_over", r.corrected_over},
              {"matches", matches},
              {"unmatched_truth", r.unmatched_truth},
              {"unmatched_detected", r.unmatched_detected}};
}

Json to_json(const PageSpec& spec) {
  Json lines = Json::array();
  for (const auto& l : spec.lines)
    lines.push_back(Json{{"top", l.top},
                         {"bottom", l.bottom},
                         {"left_margin", l.left_margin},
                         {"right_margin", l.right_margin},
                         {"ink_density", l.ink_density}});
  Json artifacts = Json::array();
  for (const auto& a : spec.artifacts) {
    if (const auto* t = std::get_if<TouchAtLeft>(&a)) {
      artifacts.push_back(Json{{"type", "TouchAtLeft"}, {"upper", t->upper}, {"lower", t->lower}});
    } else if (const auto* i = std::get_if<LeftIndent>(&a)) {
      artifacts.push_back(Json{{"type", "LeftIndent"}, {"line", i->line}, {"depth", i->depth}});
    } else if (const auto* s = std::get_if<ConcaveSliver>(&a)) {
      artifacts.push_back(Json{{"type", "ConcaveSliver"}, {"line", s->line}, {"rows", s->rows}});
    }
  }
  return Json{{"schema", kSchemaVersion}, {"width", spec.width},   {"height", spec.height},
              {"seed", spec.seed},         {"lines", lines},        {"artifacts", artifacts}};
}

PageSpec page_spec_from_json(const Json& j) {
  check_schema(j);
  PageSpec spec;
  spec.width = get_field<std::size_t>(j, "width");
  spec.height = get_field<std::size_t>(j, "height");
  spec.seed = j.contains("seed") ? get_field<std::uint64_t>(j, "seed") : 0;
  if (!j.contains("lines") || !j.at("lines").is_array()) throw ParseError("missing 'lines' array");
  for (const auto& l : j.at("lines")) {
    LineSpec line;
    line.top = get_field<std::size_t>(l, "top");
    line.bottom = get_field<std::size_t>(l, "bottom");
    line.left_margin = get_field<std::size_t>(l, "left_margin");
    line.right_margin = get_field<std::size_t>(l, "right_margin");
    if (l.contains("ink_density")) line.ink_density = get_field<double>(l, "ink_density");
    spec.lines.push_back(line);
  }
  if (j.contains("artifacts")) {
    for (const auto& a : j.at("artifacts")) {
      const auto type = get_field<std::string>(a, "type");
      if (type == "TouchAtLeft") {
        spec.artifacts.emplace_back(
            TouchAtLeft{get_field<std::size_t>(a, "upper"), get_field<std::size_t>(a, "lower")});
      } else if (type == "LeftIndent") {
        spec.artifacts.emplace_back(
            LeftIndent{get_field<std::size_t>(a, "line"), get_field<std::size_t>(a, "depth")});
      } else if (type == "ConcaveSliver") {
        spec.artifacts.emplace_back(
            ConcaveSliver{get_field<std::size_t>(a, "line"), get_field<std::size_t>(a, "rows")});
      } else {
        throw ParseError("unknown artifact type '" + type + "'");
      }
    }
  }
  return spec;
}

std::optional<DetectedSide> detected_side_from_json(const Json& j, Side side) {
  check_schema(j);
  const Json* entry = nullptr;
  std::size_t height = 0;
  if (j.contains("sides")) {
    const auto& sides = j.at("sides");
    const std::string key(to_string(side));
    if (!sides.is_object()) throw ParseError("'sides' must be an object");
    if (!sides.contains(key)) return std::nullopt;
    entry = &sides.at(key);
    height = get_field<std::size_t>(j, "height");
  } else {
    if (!j.contains("points")) throw ParseError("detected document has neither 'sides' nor 'points'");
    if (j.contains("side") && j.at("side") != to_string(side)) return std::nullopt;
    entry = &j;
    height = j.contains("height") ? get_field<std::size_t>(j, "height") : 0;
  }

  DetectedSide out;
  out.points.side = side;
  out.points.points = get_rows(*entry, "points");
  if (height == 0 && !out.points.points.empty()) height = out.points.points.back() + 1;
  out.points.height = height;
  if (entry->contains("provenance")) {
    for (const auto& p : entry->at("provenance")) {
      try {
        out.points.provenance.push_back(provenance_from_string(p.get<std::string>()));
      } catch (const std::exception& e) {
        throw ParseError(e.what());
      }
    }
    if (out.points.provenance.size() != out.points.points.size())
      throw ParseError("'provenance' must parallel 'points'");
  } else {
    out.points.provenance.assign(out.points.points.size(), Provenance::Detected);
  }
  for (std::size_t i = 1; i < out.points.points.size(); ++i)
    if (out.points.points[i] <= out.points.points[i - 1])
      throw ParseError("detected points must be strictly increasing");

  if (entry->contains("bands")) {
    std::vector<Band> bands;
    for (const auto& b : entry->at("bands")) bands.push_back(band_from_json(b));
    try {
      out.bands.emplace(std::move(bands), height);
    } catch (const InvalidInput& e) {
      throw ParseError(std::string("bands: ") + e.what());
    }
  }
  if (entry->contains("trace")) {
    const auto& t = entry->at("trace");
    RefinementTrace trace;
    if (t.contains("deleted_bands"))
      for (const auto& b : t.at("deleted_bands")) trace.deleted_bands.push_back(band_from_json(b));
    if (t.contains("inserted_separators")) trace.inserted_separators = get_rows(t, "inserted_separators");
    if (t.contains("recursion_depth_used"))
      trace.recursion_depth_used = get_field<std::size_t>(t, "recursion_depth_used");
    if (t.contains("depth_cap_hit")) trace.depth_cap_hit = get_field<bool>(t, "depth_cap_hit");
    out.trace = std::move(trace);
  }
  return out;
}

}  // namespace rleseg

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rleseg/band_detection.hpp"
#include "rleseg/error.hpp"
#include "rleseg/evaluation.hpp"
#include "rleseg/json_io.hpp"
#include "rleseg/pipeline.hpp"
#include "rleseg/rle_codec.hpp"
#include "rleseg/synthetic_corpus.hpp"
#include "rleseg/terminal_columns.hpp"

namespace py = pybind11;
using namespace rleseg;

namespace {

using PixelArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

Raster raster_from_array(const PixelArray& pixels) {
  if (pixels.ndim() != 2) throw InvalidInput("expected a 2-D array of pixels");
  const auto h = static_cast<std::size_t>(pixels.shape(0));
  const auto w = static_cast<std::size_t>(pixels.shape(1));
  if (h == 0 || w == 0) throw InvalidInput("cannot encode an empty image");
  Raster raster(w, h);
  auto view = pixels.unchecked<2>();
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c)
      raster.set(r, c, view(static_cast<py::ssize_t>(r), static_cast<py::ssize_t>(c)));
  return raster;
}

PixelArray array_from_raster(const Raster& raster) {
  PixelArray out({static_cast<py::ssize_t>(raster.height()), static_cast<py::ssize_t>(raster.width())});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t r = 0; r < raster.height(); ++r)
    for (std::size_t c = 0; c < raster.width(); ++c)
      view(static_cast<py::ssize_t>(r), static_cast<py::ssize_t>(c)) = raster.at(r, c);
  return out;
}

PipelineConfig make_config(const DetectionParams& params, const std::string& sides,
                           bool enable_insertion, bool enable_deletion) {
  PipelineConfig cfg;
  cfg.params = params;
  cfg.left = sides == "left" || sides == "both";
  cfg.right = sides == "right" || sides == "both";
  cfg.refinement.enable_insertion = enable_insertion;
  cfg.refinement.enable_deletion = enable_deletion;
  return cfg;
}

py::list bands_to_list(const BandList& bands) {
  py::list out;
  for (const auto& b : bands.bands())
    out.append(py::make_tuple(std::string(to_string(b.kind)), b.start, b.end));
  return out;
}

}  // namespace

PYBIND11_MODULE(_rleseg, m) {
  m.doc() = "Text-line separator points from run-length compressed binary documents";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<UnsupportedFormat>(m, "UnsupportedFormat", PyExc_ValueError);
  py::register_exception<InvalidSpec>(m, "InvalidSpec", PyExc_ValueError);

  m.def("encode_row", [](const std::vector<std::uint8_t>& row) { return encode_row(row); },
        py::arg("row"), "Run lengths of one binary row, white run first.");
  m.def("decode_row", [](const RunRow& runs, std::uint64_t width) { return decode_row(runs, width); },
        py::arg("runs"), py::arg("width"));

  py::class_<RleDocument>(m, "RleDocument")
      .def(py::init<std::uint64_t, std::vector<RunRow>>(), py::arg("width"), py::arg("rows"))
      .def_property_readonly("width", &RleDocument::width)
      .def_property_readonly("height", &RleDocument::height)
      .def_property_readonly("rows", &RleDocument::rows)
      .def("run_count", &RleDocument::run_count)
      .def("__eq__", [](const RleDocument& a, const RleDocument& b) { return a == b; })
      .def("__repr__", [](const RleDocument& d) {
        return "<RleDocument " + std::to_string(d.width()) + "x" + std::to_string(d.height()) + ">";
      });

  m.def("encode_image", [](const PixelArray& pixels) { return encode_image(raster_from_array(pixels)); },
        py::arg("pixels"), "Encode a 2-D array (non-zero = ink).");
  m.def("decode_image", [](const RleDocument& doc) { return array_from_raster(decode_image(doc)); },
        py::arg("doc"));
  m.def("read_rle_csv", [](const std::string& path) { return read_rle_csv(std::filesystem::path(path)); },
        py::arg("path"));
  m.def("write_rle_csv",
        [](const RleDocument& doc, const std::string& path) { write_rle_csv(doc, std::filesystem::path(path)); },
        py::arg("doc"), py::arg("path"));

  m.def("left_column", [](const RleDocument& doc) { return left_column(doc).depths; }, py::arg("doc"));
  m.def("right_column", [](const RleDocument& doc) { return right_column(doc).depths; }, py::arg("doc"));

  py::class_<DetectionParams>(m, "DetectionParams")
      .def(py::init<>())
      .def_readwrite("threshold_divisor", &DetectionParams::threshold_divisor)
      .def_readwrite("large_band_divisor", &DetectionParams::large_band_divisor)
      .def_readwrite("under_sep_factor", &DetectionParams::under_sep_factor)
      .def_readwrite("max_recursion_depth", &DetectionParams::max_recursion_depth)
      .def_readwrite("over_sep_fraction", &DetectionParams::over_sep_fraction)
      .def_readwrite("insertion_factor", &DetectionParams::insertion_factor);

  m.def("default_threshold", &default_threshold, py::arg("width"), py::arg("params") = DetectionParams{});
  m.def("detect_mask",
        [](const std::vector<std::uint64_t>& depths, std::uint64_t t) { return detect_mask(depths, t); },
        py::arg("depths"), py::arg("t"));
  m.def(
      "detect_bands",
      [](const std::vector<std::uint64_t>& depths, std::uint64_t width, const DetectionParams& params) {
        return bands_to_list(detect_bands(TerminalColumn{Side::Left, width, depths}, params));
      },
      py::arg("depths"), py::arg("width"), py::arg("params") = DetectionParams{},
      "Separator/text bands as (kind, start, end) tuples.");

  m.def(
      "_segment_json",
      [](const RleDocument& doc, const DetectionParams& params, const std::string& sides,
         bool enable_insertion, bool enable_deletion) {
        const auto cfg = make_config(params, sides, enable_insertion, enable_deletion);
        return to_json(segment(doc, cfg), cfg).dump();
      },
      py::arg("doc"), py::arg("params"), py::arg("sides"), py::arg("enable_insertion"),
      py::arg("enable_deletion"));

  m.def(
      "detection_rate",
      [](std::uint64_t o2o, std::uint64_t n) {
        const auto r = detection_rate(o2o, n);
        return py::make_tuple(r.value(), r.percent_string());
      },
      py::arg("o2o"), py::arg("n"), "(fraction, percent string rounded half-up)");
  m.def("expected_point_count", &expected_point_count, py::arg("total_lines"));
  m.def(
      "match_points",
      [](const std::vector<std::size_t>& detected, const std::vector<std::size_t>& truth,
         std::size_t tolerance) {
        const auto mt = match_points(detected, truth, tolerance);
        py::list pairs;
        for (const auto& p : mt.pairs) pairs.append(py::make_tuple(p.detected, p.truth, p.distance));
        py::dict d;
        d["o2o"] = mt.o2o();
        d["pairs"] = pairs;
        d["unmatched_detected"] = mt.unmatched_detected;
        d["unmatched_truth"] = mt.unmatched_truth;
        return d;
      },
      py::arg("detected"), py::arg("truth"), py::arg("tolerance"));

  m.def(
      "_generate_page_json",
      [](std::uint64_t seed, bool touch_at_left, bool concave_sliver, bool left_indent) {
        RandomPageOptions opt;
        opt.touch_at_left = touch_at_left;
        opt.concave_sliver = concave_sliver;
        opt.left_indent = left_indent;
        const auto spec = random_page_spec(seed, opt);
        auto page = generate(spec);
        Json truth = Json::array({to_json(page.left), to_json(page.right)});
        return py::make_tuple(array_from_raster(page.raster), to_json(spec).dump(), truth.dump());
      },
      py::arg("seed"), py::arg("touch_at_left") = false, py::arg("concave_sliver") = false,
      py::arg("left_indent") = false);
}

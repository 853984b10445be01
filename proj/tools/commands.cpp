#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "rleseg/error.hpp"
#include "rleseg/evaluation.hpp"
#include "rleseg/json_io.hpp"
#include "rleseg/pbm.hpp"
#include "rleseg/pipeline.hpp"
#include "rleseg/rle_codec.hpp"
#include "rleseg/synthetic_corpus.hpp"

namespace rleseg::cli {

namespace fs = std::filesystem;

namespace {

enum class InputFormat { Auto, Pbm, RleCsv };

/// Usage problems detected after CLI11 parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

InputFormat sniff_format(const fs::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".pbm") return InputFormat::Pbm;
  if (ext == ".csv") return InputFormat::RleCsv;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  char head[2] = {0, 0};
  in.read(head, 2);
  if (head[0] == 'P' && (head[1] == '1' || head[1] == '4')) return InputFormat::Pbm;
  if (head[0] >= '0' && head[0] <= '9') return InputFormat::RleCsv;
  throw UnsupportedFormat("unsupported format: " + path.string());
}

RleDocument load_document(const fs::path& path, InputFormat format) {
  if (format == InputFormat::Auto) format = sniff_format(path);
  if (format == InputFormat::RleCsv) return read_rle_csv(path);
  return encode_image(read_pbm(path));
}

Raster load_raster(const fs::path& path, InputFormat format) {
  if (format == InputFormat::Auto) format = sniff_format(path);
  if (format == InputFormat::RleCsv) return decode_image(read_rle_csv(path));
  return read_pbm(path);
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::size_t batch_threads() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RLE_LINESEG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
  }
  return n;
}

// ---- encode -----------------------------------------------------------

struct EncodeArgs {
  std::string input;
  std::string output;
};

int cmd_encode(const EncodeArgs& a, std::ostream& out) {
  const auto raster = read_pbm(fs::path(a.input));
  const auto doc = encode_image(raster);
  write_rle_csv(doc, fs::path(a.output));
  const auto pixels = static_cast<double>(doc.width()) * static_cast<double>(doc.height());
  out << "width=" << doc.width() << " height=" << doc.height() << " runs=" << doc.run_count()
      << " compression_ratio=" << std::fixed << std::setprecision(2)
      << pixels / static_cast<double>(doc.run_count()) << '\n';
  return kOk;
}

// ---- segment ----------------------------------------------------------

struct SegmentArgs {
  std::string input;
  InputFormat format = InputFormat::Auto;
  std::string sides = "both";
  PipelineConfig config;
  bool compact = false;
};

PipelineConfig resolve_config(const SegmentArgs& a) {
  PipelineConfig cfg = a.config;
  cfg.left = a.sides == "left" || a.sides == "both";
  cfg.right = a.sides == "right" || a.sides == "both";
  try {
    cfg.validate();
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

Json segment_file(const fs::path& path, InputFormat format, const PipelineConfig& cfg) {
  const auto doc = load_document(path, format);
  return to_json(segment(doc, cfg), cfg);
}

int cmd_segment(const SegmentArgs& a, std::ostream& out) {
  const auto cfg = resolve_config(a);
  const fs::path input(a.input);
  Json result;
  if (fs::is_directory(input)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(input)) {
      if (!entry.is_regular_file()) continue;
      const auto ext = entry.path().extension();
      if (ext == ".csv" || ext == ".pbm") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<Json> pages(files.size());
    std::vector<std::string> failures(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < files.size();) {
        try {
          pages[i] = segment_file(files[i], a.format, cfg);
        } catch (const std::exception& e) {
          failures[i] = files[i].filename().string() + ": " + e.what();
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      const auto n = std::min(batch_threads(), std::max<std::size_t>(files.size(), 1));
      for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    for (const auto& f : failures)
      if (!f.empty()) throw Error(f);

    Json arr = Json::array();
    for (std::size_t i = 0; i < files.size(); ++i) {
      Json page{{"file", files[i].filename().string()}};
      for (auto& [k, v] : pages[i].items()) page[k] = v;
      arr.push_back(std::move(page));
    }
    result = Json{{"schema", kSchemaVersion}, {"pages", arr}};
  } else {
    result = segment_file(input, a.format, cfg);
  }
  out << (a.compact ? result.dump() : result.dump(2)) << '\n';
  return kOk;
}

// ---- evaluate ---------------------------------------------------------

struct EvaluateArgs {
  std::string detected;
  std::string truth;
  std::optional<std::size_t> tolerance;
  // count mode
  std::optional<std::uint64_t> o2o;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> total_lines;
  std::uint64_t under = 0;
  std::uint64_t over = 0;
};

int cmd_evaluate_counts(const EvaluateArgs& a, std::ostream& out) {
  if (!a.o2o || !a.n) throw UsageError("count mode needs both --o2o and --n");
  const auto lines = a.total_lines.value_or(*a.n);
  Ratio dr;
  Ratio tn;
  Ratio fp;
  try {
    dr = detection_rate(*a.o2o, *a.n);
    tn = tn_rate(a.under, lines);
    fp = fp_rate(a.over, lines);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  Json j{{"schema", kSchemaVersion},
         {"o2o", *a.o2o},
         {"N", *a.n},
         {"total_lines", lines},
         {"dr", dr.value()},
         {"dr_percent", dr.percent_string()},
         {"under_count", a.under},
         {"over_count", a.over},
         {"tn_percent", tn.percent_string()},
         {"fp_percent", fp.percent_string()}};
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  if (a.o2o || a.n) return cmd_evaluate_counts(a, out);
  if (a.detected.empty() || a.truth.empty())
    throw UsageError("evaluate needs DETECTED and TRUTH files (or --o2o/--n)");

  const auto detected = read_json(a.detected);
  const auto truth_doc = read_json(a.truth);
  std::vector<GroundTruth> truths;
  if (truth_doc.is_array()) {
    for (const auto& t : truth_doc) truths.push_back(ground_truth_from_json(t));
  } else if (truth_doc.is_object() && truth_doc.contains("truths")) {
    for (const auto& t : truth_doc.at("truths")) truths.push_back(ground_truth_from_json(t));
  } else {
    truths.push_back(ground_truth_from_json(truth_doc));
  }

  Json reports = Json::array();
  EvalTotals totals;
  for (const auto& truth : truths) {
    const auto side = detected_side_from_json(detected, truth.side);
    if (!side) throw ParseError("detected document has no '" + std::string(to_string(truth.side)) + "' side");
    const BandList* bands = side->bands ? &*side->bands : nullptr;
    const auto tol = a.tolerance ? *a.tolerance : (bands ? default_tolerance(*bands) : 3);
    const auto report = evaluate(side->points, truth, tol, bands, side->trace ? &*side->trace : nullptr);
    totals.add(report);
    reports.push_back(to_json(report));
  }
  Json j{{"schema", kSchemaVersion}, {"reports", reports}};
  if (totals.n > 0) {
    j["totals"] = Json{{"o2o", totals.o2o},
                       {"N", totals.n},
                       {"total_lines", totals.total_lines},
                       {"dr_percent", totals.dr().percent_string()},
                       {"tn_percent", totals.tn().percent_string()},
                       {"fp_percent", totals.fp().percent_string()}};
  }
  out << j.dump(2) << '\n';
  return kOk;
}

// ---- generate ---------------------------------------------------------

struct GenerateArgs {
  std::string out_dir;
  std::string spec;
  std::size_t pages = 10;
  std::uint64_t seed = 1;
  double touch_fraction = 0.0;
  double sliver_fraction = 0.0;
  double indent_fraction = 0.0;
  bool plain = false;
};

void write_page(const fs::path& dir, const std::string& stem, const PageSpec& spec, bool plain) {
  const auto page = generate(spec);
  write_pbm(page.raster, dir / (stem + ".pbm"), plain ? PbmEncoding::Plain : PbmEncoding::Raw);
  write_rle_csv(encode_image(page.raster), dir / (stem + ".csv"));
  std::ofstream(dir / (stem + ".truth.json"))
      << Json::array({to_json(page.left), to_json(page.right)}).dump(2) << '\n';
  std::ofstream(dir / (stem + ".spec.json")) << to_json(spec).dump(2) << '\n';
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  if (!a.spec.empty()) {
    const auto spec = page_spec_from_json(read_json(a.spec));
    write_page(dir, fs::path(a.spec).stem().stem().string(), spec, a.plain);
    out << "wrote 1 page to " << dir.string() << '\n';
    return kOk;
  }
  // Artifact assignment is by page index so the fractions are exact.
  const auto touch_pages = static_cast<std::size_t>(a.touch_fraction * static_cast<double>(a.pages) + 0.5);
  const auto sliver_pages = static_cast<std::size_t>(a.sliver_fraction * static_cast<double>(a.pages) + 0.5);
  const auto indent_pages = static_cast<std::size_t>(a.indent_fraction * static_cast<double>(a.pages) + 0.5);
  for (std::size_t i = 0; i < a.pages; ++i) {
    RandomPageOptions opt;
    opt.touch_at_left = i < touch_pages;
    opt.concave_sliver = i >= touch_pages && i < touch_pages + sliver_pages;
    opt.left_indent = i >= touch_pages + sliver_pages && i < touch_pages + sliver_pages + indent_pages;
    std::ostringstream stem;
    stem << "page_" << std::setw(4) << std::setfill('0') << i;
    write_page(dir, stem.str(), random_page_spec(a.seed + i, opt), a.plain);
  }
  out << "wrote " << a.pages << " pages to " << dir.string() << '\n';
  return kOk;
}

// ---- overlay ----------------------------------------------------------

struct OverlayArgs {
  std::string input;
  std::string points;
  std::string output;
  InputFormat format = InputFormat::Auto;
  std::size_t tick_length = 20;
  bool plain = false;
};

int cmd_overlay(const OverlayArgs& a, std::ostream& out) {
  auto raster = load_raster(fs::path(a.input), a.format);
  const auto doc = read_json(a.points);
  const auto len = std::min(std::max<std::size_t>(a.tick_length, 1), raster.width());
  std::size_t ticks = 0;
  for (Side side : {Side::Left, Side::Right}) {
    const auto detected = detected_side_from_json(doc, side);
    if (!detected) continue;
    for (auto row : detected->points.points) {
      if (row >= raster.height())
        throw InvalidInput("point " + std::to_string(row) + " outside a page of height " +
                           std::to_string(raster.height()));
      auto px = raster.row(row);
      if (side == Side::Left) {
        std::fill(px.begin(), px.begin() + static_cast<std::ptrdiff_t>(len), 1);
      } else {
        std::fill(px.end() - static_cast<std::ptrdiff_t>(len), px.end(), 1);
      }
      ++ticks;
    }
  }
  write_pbm(raster, fs::path(a.output), a.plain ? PbmEncoding::Plain : PbmEncoding::Raw);
  out << "ticks=" << ticks << '\n';
  return kOk;
}

void add_param_flags(CLI::App* cmd, PipelineConfig& cfg) {
  auto& p = cfg.params;
  cmd->add_option("--threshold-divisor", p.threshold_divisor, "t = width / divisor")->capture_default_str();
  cmd->add_option("--large-band-divisor", p.large_band_divisor,
                  "separator bands wider than height / divisor go straight to ROI")
      ->capture_default_str();
  cmd->add_option("--under-sep-factor", p.under_sep_factor, "ROI when wider than factor x average")
      ->capture_default_str();
  cmd->add_option("--over-sep-fraction", p.over_sep_fraction, "text sliver cut-off, fraction of median")
      ->capture_default_str();
  cmd->add_option("--insertion-factor", p.insertion_factor, "merged text cut-off, factor x median")
      ->capture_default_str();
  cmd->add_option("--max-depth", p.max_recursion_depth, "ROI recursion cap")->capture_default_str();
  cmd->add_flag("--enable-insertion,!--disable-insertion", cfg.refinement.enable_insertion,
                "insert separators found at the opposite terminal");
  cmd->add_flag("--enable-deletion,!--disable-deletion", cfg.refinement.enable_deletion,
                "delete separators that cut thin text slivers");
  cmd->add_flag("--insertion-first,!--deletion-first", [&cfg](std::int64_t n) {
    cfg.refinement.deletion_first = n <= 0;
  }, "run insertion before deletion (default: deletion first)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Text-line separator points from run-length compressed document images", "rleseg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rleseg 0.1.0");

  const std::map<std::string, InputFormat> formats{
      {"auto", InputFormat::Auto}, {"pbm", InputFormat::Pbm}, {"rlecsv", InputFormat::RleCsv}};

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "PBM (P1/P4) to RLE CSV");
  encode->add_option("input", enc.input, "input PBM")->required();
  encode->add_option("output", enc.output, "output RLE CSV")->required();

  SegmentArgs seg;
  auto* segment_cmd = app.add_subcommand("segment", "separator points as JSON on stdout");
  segment_cmd->add_option("input", seg.input, "PBM, RLE CSV, or a directory of them")->required();
  segment_cmd->add_option("--format", seg.format, "input format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  segment_cmd->add_option("--sides", seg.sides, "left, right or both")
      ->check(CLI::IsMember({"left", "right", "both"}))
      ->capture_default_str();
  segment_cmd->add_flag("--compact", seg.compact, "single-line JSON");
  add_param_flags(segment_cmd, seg.config);

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score detected points against ground truth");
  evaluate_cmd->add_option("detected", ev.detected, "segment output JSON");
  evaluate_cmd->add_option("truth", ev.truth, "ground-truth JSON (object or array)");
  evaluate_cmd->add_option("--tolerance", ev.tolerance, "match tolerance in rows");
  evaluate_cmd->add_option("--o2o", ev.o2o, "precomputed one-to-one match count");
  evaluate_cmd->add_option("--n", ev.n, "precomputed ground-truth count");
  evaluate_cmd->add_option("--total-lines", ev.total_lines, "line count for TN/FP (default: N)");
  evaluate_cmd->add_option("--under", ev.under, "under-separation count");
  evaluate_cmd->add_option("--over", ev.over, "over-separation count");

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "write a synthetic corpus");
  generate_cmd->add_option("--out", gen.out_dir, "output directory")->required();
  generate_cmd->add_option("--spec", gen.spec, "render one PageSpec JSON instead of random pages");
  generate_cmd->add_option("--pages", gen.pages, "number of random pages")->capture_default_str();
  generate_cmd->add_option("--seed", gen.seed, "seed of the first page")->capture_default_str();
  generate_cmd->add_option("--touch-fraction", gen.touch_fraction, "pages with a TouchAtLeft")
      ->check(CLI::Range(0.0, 1.0));
  generate_cmd->add_option("--sliver-fraction", gen.sliver_fraction, "pages with a ConcaveSliver")
      ->check(CLI::Range(0.0, 1.0));
  generate_cmd->add_option("--indent-fraction", gen.indent_fraction, "pages with a LeftIndent")
      ->check(CLI::Range(0.0, 1.0));
  generate_cmd->add_flag("--plain", gen.plain, "write P1 instead of P4");

  OverlayArgs ov;
  auto* overlay_cmd = app.add_subcommand("overlay", "draw separator ticks onto the page");
  overlay_cmd->add_option("input", ov.input, "PBM or RLE CSV")->required();
  overlay_cmd->add_option("points", ov.points, "segment output JSON")->required();
  overlay_cmd->add_option("output", ov.output, "output PBM")->required();
  overlay_cmd->add_option("--format", ov.format, "input format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  overlay_cmd->add_option("--tick-length", ov.tick_length, "tick length in pixels")->capture_default_str();
  overlay_cmd->add_flag("--plain", ov.plain, "write P1 instead of P4");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (encode->parsed()) return cmd_encode(enc, out);
    if (segment_cmd->parsed()) return cmd_segment(seg, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(ev, out);
    if (generate_cmd->parsed()) return cmd_generate(gen, out);
    if (overlay_cmd->parsed()) return cmd_overlay(ov, out);
  } catch (const UsageError& e) {
    err << "rleseg: " << e.what() << '\n';
    return kUsageError;
  } catch (const UnsupportedFormat& e) {
    err << "rleseg: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "rleseg: " << e.what() << '\n';
    return kProcessingError;
  }
  return kUsageError;
}

}  // namespace rleseg::cli

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <new>
#include <random>
#include <sstream>
#include <string>

#include "../../tools/commands.hpp"
#include "column_fixtures.hpp"
#include "fixtures.hpp"
#include "rleseg/evaluation.hpp"
#include "rleseg/pipeline.hpp"
#include "rleseg/rle_codec.hpp"
#include "rleseg/synthetic_corpus.hpp"

// Largest single heap request while tracking is on.
namespace {
std::atomic<bool> g_track{false};
std::atomic<std::size_t> g_largest{0};
}  // namespace

void* operator new(std::size_t n) {
  if (g_track.load(std::memory_order_relaxed)) {
    auto prev = g_largest.load(std::memory_order_relaxed);
    while (n > prev && !g_largest.compare_exchange_weak(prev, n)) {
    }
  }
  if (void* p = std::malloc(n ? n : 1)) return p;
  throw std::bad_alloc();
}
void operator delete(void* p) noexcept { std::free(p); }
void operator delete(void* p, std::size_t) noexcept { std::free(p); }

namespace rleseg {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

// ---- 1 --------------------------------------------------------------------

Outcome sample_page_golden() {
  Outcome o;
  const auto rows = testing::sample_page_rows();
  const auto t0 = Clock::now();
  const auto doc = encode_image(std::span<const BitRow>(rows));
  const auto back = decode_image(doc);
  const auto elapsed = ms_since(t0);

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (doc.row(i) != testing::strip_padding(testing::sample_page_padded()[i]))
      o.check(false, "row " + std::to_string(i + 1) + " differs");
  }
  o.check(doc.row(6).front() == 0 && doc.row(7).front() == 0, "rows 7-8 lack the leading 0");
  o.check(doc.row(0) == RunRow{14} && doc.row(12) == RunRow{14}, "blank rows not a single run");
  o.check(back == Raster(rows), "round trip not bit-identical");
  o.check(elapsed < 1.0, "took " + std::to_string(elapsed) + " ms");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(elapsed) + " ms";
  return o;
}

// ---- 2 --------------------------------------------------------------------

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const auto page = generate(random_page_spec(seed));
    const PipelineConfig config;
    const auto oracle = oracle_segment(page.raster, config);
    const auto result = segment(encode_image(page.raster), config);
    for (std::size_t s = 0; s < 2; ++s) {
      if (!(oracle.sides[s] == result.sides[s].points)) {
        if (++mismatches <= 3) o.check(false, "seed " + std::to_string(seed) + " side " + std::to_string(s));
      }
    }
  }
  const auto elapsed = ms_since(t0) / 1000.0;
  o.check(mismatches == 0, std::to_string(mismatches) + " mismatching sides");
  o.check(elapsed < 30.0, "took " + std::to_string(elapsed) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(elapsed) + " s for 500 pages";
  return o;
}

// ---- 3 --------------------------------------------------------------------

Outcome desk_scale_dr() {
  Outcome o;
  PipelineConfig on;
  PipelineConfig off;
  off.refinement.enable_deletion = false;
  off.refinement.enable_insertion = false;

  EvalTotals totals[2];
  std::uint64_t touch_under = 0;
  std::uint64_t sliver_over = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    RandomPageOptions opts;
    opts.touch_at_left = i < 20;
    opts.concave_sliver = i >= 20 && i < 40;
    const auto page = generate(random_page_spec(1000 + i, opts));
    const auto doc = encode_image(page.raster);
    const auto with = segment(doc, on);
    const auto without = segment(doc, off);
    for (std::size_t s = 0; s < 2; ++s) {
      const auto& truth = s == 0 ? page.left : page.right;
      const auto& side = with.sides[s];
      totals[s].add(evaluate(side.points, truth, default_tolerance(side.bands), &side.bands, &side.trace));
      const auto& raw = without.sides[s];
      const auto r = evaluate(raw.points, truth, default_tolerance(raw.bands), &raw.bands, &raw.trace);
      if (opts.touch_at_left) touch_under += r.under_count;
      if (opts.concave_sliver) sliver_over += r.over_count;
    }
  }
  const auto left = totals[0].dr();
  const auto right = totals[1].dr();
  o.check(left.num * 100 >= 95 * left.den, "left DR " + left.percent_string());
  o.check(right.num * 100 >= 95 * right.den, "right DR " + right.percent_string());
  o.check(touch_under > 0, "no under-separation on touching pages without corrections");
  o.check(sliver_over > 0, "no over-separation on sliver pages without corrections");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("DR left ") + left.percent_string() + "% right " +
              right.percent_string() + "%, uncorrected TN count " + std::to_string(touch_under) +
              " FP count " + std::to_string(sliver_over);
  return o;
}

// ---- 4 --------------------------------------------------------------------

Outcome metric_arithmetic() {
  Outcome o;
  const auto a = detection_rate(4173, 4298).percent_string();
  const auto b = detection_rate(2578, 2649).percent_string();
  o.check(a == "97.09", "4173/4298 -> " + a);
  // 97.3197... rounds half-up
  o.check(b == "97.32", "2578/2649 -> " + b);
  for (std::uint64_t lines : {1, 5, 2649})
    o.check(expected_point_count(lines) == lines + 1, "expected_point_count(" + std::to_string(lines) + ")");
  o.detail += (o.detail.empty() ? "" : "; ") + a + "%, " + b + "%";
  return o;
}

// ---- 5 --------------------------------------------------------------------

Outcome algorithm_properties() {
  Outcome o;
  std::mt19937_64 rng(2024);

  // min-shift invariance, threshold monotonicity, read bound
  std::size_t worst_reads = 0;
  bool reads_ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t h = 1 + rng() % 300;
    std::vector<std::uint64_t> d(h);
    for (auto& v : d) v = rng() % 200;
    const std::uint64_t t = 1 + rng() % 40;
    const std::uint64_t shift = rng() % 1000;
    auto shifted = d;
    for (auto& v : shifted) v += shift;
    if (detect_mask(d, t) != detect_mask(shifted, t)) o.check(false, "min-shift changed the mask");
    const auto wide = detect_mask(d, t + 1 + rng() % 10);
    const auto narrow = detect_mask(d, t);
    for (std::size_t i = 0; i < h; ++i)
      if (wide[i] > narrow[i]) {
        o.check(false, "raising t added a separator row");
        break;
      }
    ScanStats stats;
    detect_mask(d, t, &stats);
    worst_reads = std::max(worst_reads, stats.reads);
    if (stats.reads > 2 * h) reads_ok = false;
  }
  o.check(reads_ok, "detect_mask read more than 2 x height");

  // exclusion rule over 1000 random band lists
  const DetectionParams params;
  std::size_t oversized_seen = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::pair<BandKind, std::size_t>> parts;
    BandKind kind = rng() % 2 ? BandKind::Separator : BandKind::Text;
    const std::size_t n = 1 + rng() % 14;
    for (std::size_t i = 0; i < n; ++i) {
      parts.emplace_back(kind, 1 + rng() % (rng() % 5 == 0 ? 120 : 25));
      kind = kind == BandKind::Separator ? BandKind::Text : BandKind::Separator;
    }
    const auto bands = testing::tile(parts);
    const auto h = bands.height();
    AverageProbe probe;
    const auto roi = find_under_separation(bands, h, params, &probe);
    for (const auto& b : probe.averaged)
      if (static_cast<double>(b.width()) * params.large_band_divisor > static_cast<double>(h))
        o.check(false, "oversized band entered the average");
    for (const auto& b : bands.of_kind(BandKind::Separator)) {
      const bool big = static_cast<double>(b.width()) * params.large_band_divisor > static_cast<double>(h);
      const bool in_avg = std::find(probe.averaged.begin(), probe.averaged.end(), b) != probe.averaged.end();
      const bool in_over = std::find(probe.oversized.begin(), probe.oversized.end(), b) != probe.oversized.end();
      if (big != in_over || big == in_avg) o.check(false, "probe misclassified a band");
      if (big) {
        ++oversized_seen;
        const bool in_roi = std::any_of(roi.intervals.begin(), roi.intervals.end(), [&](const RoiInterval& r) {
          return r.start == b.start && r.end == b.end && r.tag == RoiTag::OversizedBand;
        });
        if (!in_roi) o.check(false, "oversized band missing from ROI");
      }
    }
  }
  o.check(oversized_seen > 0, "random lists never produced an oversized band");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("worst read count ") + std::to_string(worst_reads) +
              ", " + std::to_string(oversized_seen) + " oversized bands excluded";
  return o;
}

// ---- 6 --------------------------------------------------------------------

// A clean terminal column: text rows near the margin, blank rows at the width.
TerminalColumn random_clean_column(std::mt19937_64& rng) {
  const std::uint64_t width = 400 + rng() % 600;
  const std::uint64_t t = width / 25;
  const std::uint64_t margin = width / 20 + rng() % (width / 10);
  const std::size_t lines = 2 + rng() % 10;
  const std::size_t pitch = 20 + rng() % 20;
  const std::size_t gap = 10 + rng() % 10;
  std::vector<std::uint64_t> d;
  auto blank = [&](std::size_t rows) { d.insert(d.end(), rows, width); };
  blank(10 + rng() % 30);
  for (std::size_t i = 0; i < lines; ++i) {
    if (i > 0) blank(gap + rng() % 3);
    const std::size_t rows = pitch + rng() % 3;
    for (std::size_t r = 0; r < rows; ++r) d.push_back(margin + rng() % (t / 2 + 1));
  }
  blank(10 + rng() % 30);
  return {Side::Left, width, d};
}

Outcome refinement_fixed_point() {
  Outcome o;
  const DetectionParams params;
  const auto [touch_left, touch_right] = testing::touching_columns();
  std::vector<std::pair<TerminalColumn, TerminalColumn>> fixtures = {
      {testing::indented_column(), testing::indented_column()},
      {touch_left, touch_right},
      {touch_right, touch_left},
      {testing::sliver_column(), testing::sliver_column()},
  };
  // generated pages with each artifact
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomPageOptions opts;
    opts.touch_at_left = seed % 3 == 0;
    opts.concave_sliver = seed % 3 == 1;
    opts.left_indent = seed % 2 == 0;
    const auto doc = encode_image(generate(random_page_spec(500 + seed, opts)).raster);
    fixtures.emplace_back(left_column(doc), right_column(doc));
    fixtures.emplace_back(right_column(doc), left_column(doc));
  }
  std::size_t non_idempotent = 0;
  for (const auto& [own, opposite] : fixtures) {
    const auto once = refine_bands(own, &opposite, detect_bands(own, params), params);
    const auto twice = refine_bands(own, &opposite, once.bands, params);
    if (!(twice.bands == once.bands) ||
        !(assemble(twice.bands, twice.trace, own.side) == assemble(once.bands, once.trace, own.side)))
      ++non_idempotent;
  }
  o.check(non_idempotent == 0, std::to_string(non_idempotent) + " fixtures changed on a second pass");

  std::mt19937_64 rng(77);
  std::size_t cap_hits = 0;
  std::size_t deepest = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto col = random_clean_column(rng);
    const auto refined = refine_bands(col, nullptr, detect_bands(col, params), params);
    if (refined.trace.depth_cap_hit) ++cap_hits;
    if (refined.trace.recursion_depth_used > params.max_recursion_depth) ++cap_hits;
    deepest = std::max(deepest, refined.trace.recursion_depth_used);
  }
  o.check(cap_hits == 0, std::to_string(cap_hits) + " columns hit the recursion cap");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(fixtures.size()) + " fixtures idempotent, deepest recursion " +
              std::to_string(deepest) + " of " + std::to_string(params.max_recursion_depth);
  return o;
}

// ---- 7 --------------------------------------------------------------------

Outcome compressed_path_purity() {
  Outcome o;
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "rleseg_acceptance";
  fs::create_directories(dir);
  const auto csv = dir / "large.csv";

  // 2000 x 1500 page
  PageSpec spec;
  spec.width = 2000;
  spec.seed = 5;
  for (std::size_t i = 0; i < 30; ++i) spec.lines.push_back({30 + 48 * i, 30 + 48 * i + 31, 120, 150, 0.2});
  spec.height = 1500;
  write_rle_csv(encode_image(generate(spec).raster), csv);
  const std::size_t bitmap_bytes = spec.width * spec.height / 8;

  std::ostringstream out, err;
  Raster::reset_materializations();
  g_largest = 0;
  g_track = true;
  const int code = cli::run({"segment", csv.string(), "--compact"}, out, err);
  g_track = false;
  const auto rasters = Raster::materializations();
  const auto largest = g_largest.load();
  fs::remove_all(dir);

  o.check(code == 0, "segment exited " + std::to_string(code) + ": " + err.str());
  o.check(rasters == 0, std::to_string(rasters) + " rasters materialized");
  o.check(largest < bitmap_bytes, "allocated " + std::to_string(largest) + " bytes at once");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(rasters) + " rasters, largest allocation " +
              std::to_string(largest) + " B vs 1-bit page " + std::to_string(bitmap_bytes) + " B";
  return o;
}

}  // namespace
}  // namespace rleseg

int main() {
  using namespace rleseg;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 sample-page golden vectors", sample_page_golden},
      {"2 oracle equivalence", oracle_equivalence},
      {"3 desk-scale detection rate", desk_scale_dr},
      {"4 metric arithmetic", metric_arithmetic},
      {"5 algorithm-fidelity properties", algorithm_properties},
      {"6 refinement fixed point", refinement_fixed_point},
      {"7 compressed-path purity", compressed_path_purity},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << "  (" << o.detail << ")\n";
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << 7 - failed << "/7\n";
  return failed ? 1 : 0;
}

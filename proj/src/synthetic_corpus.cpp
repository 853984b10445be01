#include "rleseg/synthetic_corpus.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "rleseg/error.hpp"

namespace rleseg {

namespace {

// Platform-independent draws on top of mt19937_64 (std distributions are
// implementation defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::size_t range(std::size_t lo, std::size_t hi) {  // inclusive
    if (hi <= lo) return lo;
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }

  bool chance(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

std::size_t concavity_offset(const LineSpec& line) {
  return std::max<std::size_t>(1, (line.bottom - line.top + 1) / 5);
}

std::size_t effective_left_margin(const PageSpec& spec, std::size_t i) {
  std::size_t lm = spec.lines[i].left_margin;
  for (const auto& a : spec.artifacts)
    if (const auto* ind = std::get_if<LeftIndent>(&a); ind && ind->line == i) lm += ind->depth;
  return lm;
}

bool bridged(const PageSpec& spec, std::size_t upper) {
  return std::any_of(spec.artifacts.begin(), spec.artifacts.end(), [upper](const Artifact& a) {
    const auto* t = std::get_if<TouchAtLeft>(&a);
    return t && t->upper == upper;
  });
}

}  // namespace

void PageSpec::validate() const {
  if (width < 4 || height < 1) throw InvalidSpec("page must be at least 4 pixels wide and 1 row high");
  if (lines.empty()) throw InvalidSpec("page needs at least one line");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const auto tag = "line " + std::to_string(i) + ": ";
    if (l.top >= l.bottom) throw InvalidSpec(tag + "top must be above bottom");
    if (l.bottom >= height) throw InvalidSpec(tag + "extends below the page");
    if (2 * l.left_margin >= width || 2 * l.right_margin >= width)
      throw InvalidSpec(tag + "margins must be under half the page width");
    if (!(l.ink_density > 0.0 && l.ink_density <= 1.0))
      throw InvalidSpec(tag + "ink_density must be in (0, 1]");
  }
  for (const auto& a : artifacts) {
    if (const auto* t = std::get_if<TouchAtLeft>(&a)) {
      if (t->lower != t->upper + 1 || t->lower >= lines.size())
        throw InvalidSpec("TouchAtLeft must join a line to the next one");
    } else if (const auto* ind = std::get_if<LeftIndent>(&a)) {
      if (ind->line >= lines.size()) throw InvalidSpec("LeftIndent line out of range");
    } else if (const auto* s = std::get_if<ConcaveSliver>(&a)) {
      if (s->line >= lines.size()) throw InvalidSpec("ConcaveSliver line out of range");
      const auto& l = lines[s->line];
      if (s->rows == 0 || concavity_offset(l) + s->rows >= l.bottom - l.top + 1)
        throw InvalidSpec("ConcaveSliver rows must leave ink rows below it");
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto lm = effective_left_margin(*this, i);
    if (lm + lines[i].right_margin + 2 > width)
      throw InvalidSpec("line " + std::to_string(i) + ": indent leaves no room for text");
  }
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    if (lines[i + 1].top <= lines[i].top)
      throw InvalidSpec("lines must be ordered top to bottom");
    if (lines[i + 1].top <= lines[i].bottom && !bridged(*this, i))
      throw InvalidSpec("lines " + std::to_string(i) + " and " + std::to_string(i + 1) +
                        " overlap without a TouchAtLeft");
  }
}

GroundTruth ground_truth(const PageSpec& spec, Side side) {
  spec.validate();
  GroundTruth truth;
  truth.side = side;
  truth.total_lines = spec.lines.size();
  for (std::size_t i = 0; i + 1 < spec.lines.size(); ++i) {
    const auto a = spec.lines[i].bottom;
    const auto b = spec.lines[i + 1].top;
    // midpoint of the gap rows [a + 1, b - 1]; the boundary when lines overlap
    truth.points.push_back(b > a + 1 ? (a + 1 + b - 1) / 2 : (a + b) / 2);
  }
  const auto last = spec.lines.back().bottom;
  if (last + 1 < spec.height) truth.points.push_back((last + 1 + spec.height - 1) / 2);
  truth.points.erase(std::unique(truth.points.begin(), truth.points.end()), truth.points.end());
  for (const auto& l : spec.lines) truth.lines.push_back({l.top, l.bottom});
  return truth;
}

GeneratedPage generate(const PageSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  Raster raster(spec.width, spec.height);
  const auto w = spec.width;

  for (std::size_t i = 0; i < spec.lines.size(); ++i) {
    const auto& line = spec.lines[i];
    const auto lm = effective_left_margin(spec, i);
    const auto last_col = w - 1 - line.right_margin;
    for (std::size_t r = line.top; r <= line.bottom; ++r) {
      auto row = raster.row(r);
      row[lm] = 1;
      row[last_col] = 1;
      for (std::size_t c = lm + 1; c < last_col; ++c)
        if (rng.chance(line.ink_density)) row[c] = 1;
    }
  }

  for (const auto& a : spec.artifacts) {
    if (const auto* s = std::get_if<ConcaveSliver>(&a)) {
      const auto& line = spec.lines[s->line];
      const auto lm = effective_left_margin(spec, s->line);
      const auto last_col = w - 1 - line.right_margin;
      const auto depth = std::max<std::size_t>(1, (last_col - lm) / 3);
      const auto first = line.top + concavity_offset(line);
      for (std::size_t r = first; r < first + s->rows; ++r) {
        auto row = raster.row(r);
        std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(lm + depth), 0);
        row[lm + depth] = 1;
      }
    } else if (const auto* t = std::get_if<TouchAtLeft>(&a)) {
      const auto& upper = spec.lines[t->upper];
      const auto& lower = spec.lines[t->lower];
      const auto lm = effective_left_margin(spec, t->upper);
      const auto stroke = std::max<std::size_t>(2, (w - lm - upper.right_margin) / 50);
      for (std::size_t r = upper.bottom + 1; r < lower.top; ++r) {
        auto row = raster.row(r);
        std::fill(row.begin() + static_cast<std::ptrdiff_t>(lm),
                  row.begin() + static_cast<std::ptrdiff_t>(std::min(w - 1, lm + stroke)), 1);
      }
    }
  }

  return GeneratedPage{std::move(raster), ground_truth(spec, Side::Left),
                       ground_truth(spec, Side::Right)};
}

PageSpec random_page_spec(std::uint64_t seed, const RandomPageOptions& options) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  PageSpec spec;
  spec.seed = seed;
  spec.width = rng.range(options.min_width, options.max_width);
  const std::size_t t = std::max<std::size_t>(1, spec.width / 25);

  const auto n = rng.range(std::max<std::size_t>(options.min_lines, 1), options.max_lines);
  const auto pitch_line = rng.range(24, 40);
  const auto pitch_gap = rng.range(12, 20);
  const auto lm_base = rng.range(spec.width / 20, spec.width / 8);
  const auto rm_base = rng.range(spec.width / 20, spec.width / 8);

  std::size_t row = rng.range(16, 48);  // top margin
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) row += pitch_gap + rng.range(0, 4) - 2;
    LineSpec line;
    line.top = row;
    line.bottom = row + pitch_line + rng.range(0, 4) - 2 - 1;
    line.left_margin = lm_base + rng.range(0, t / 2);
    line.right_margin = rm_base + rng.range(0, t / 2);
    line.ink_density = 0.15 + 0.3 * rng.uniform01();
    row = line.bottom + 1;
    spec.lines.push_back(line);
  }
  spec.height = row + rng.range(16, 48);  // bottom margin

  if (options.touch_at_left && n >= 2) {
    const auto i = rng.range(0, n - 2);
    spec.artifacts.emplace_back(TouchAtLeft{i, i + 1});
  }
  if (options.concave_sliver) {
    spec.artifacts.emplace_back(ConcaveSliver{rng.range(0, n - 1), rng.range(3, 5)});
  }
  if (options.left_indent) {
    spec.artifacts.emplace_back(LeftIndent{rng.range(0, n - 1), spec.width / 4});
  }
  spec.validate();
  return spec;
}

OracleResult oracle_segment(const Raster& raster, const PipelineConfig& config) {
  config.validate();
  const auto h = raster.height();
  const auto w = raster.width();
  OracleResult out;
  out.left_depths.resize(h);
  out.right_depths.resize(h);
  for (std::size_t r = 0; r < h; ++r) {
    auto row = raster.row(r);
    std::size_t lead = 0;
    while (lead < w && row[lead] == 0) ++lead;
    std::size_t trail = 0;
    while (trail < w && row[w - 1 - trail] == 0) ++trail;
    out.left_depths[r] = lead;
    out.right_depths[r] = trail;
  }

  // Separator labelling from the raw profile: subtract the page minimum,
  // flag rows above the threshold, group equal labels.
  auto profile_bands = [&](const std::vector<std::uint64_t>& depths) {
    const auto t = default_threshold(w, config.params);
    const auto lowest = *std::min_element(depths.begin(), depths.end());
    std::vector<Band> bands;
    for (std::size_t r = 0; r < h; ++r) {
      const bool sep = lowest == w || depths[r] - lowest > t;
      const auto kind = sep ? BandKind::Separator : BandKind::Text;
      if (!bands.empty() && bands.back().kind == kind) {
        bands.back().end = r;
      } else {
        bands.push_back({kind, r, r});
      }
    }
    return BandList(std::move(bands), h);
  };

  const TerminalColumn left{Side::Left, w, out.left_depths};
  const TerminalColumn right{Side::Right, w, out.right_depths};
  auto run_side = [&](const TerminalColumn& own, const TerminalColumn& opposite) {
    auto refined = refine_bands(own, &opposite, profile_bands(own.depths), config.params,
                                config.refinement);
    out.sides.push_back(assemble(refined.bands, refined.trace, own.side));
  };
  if (config.left) run_side(left, right);
  if (config.right) run_side(right, left);
  return out;
}

}  // namespace rleseg

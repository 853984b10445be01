#include "rleseg/evaluation.hpp"

#include <algorithm>
#include <tuple>

#include "rleseg/error.hpp"

namespace rleseg {

namespace {
__extension__ typedef unsigned __int128 u128;
}

std::string Ratio::percent_string(int decimals) const {
  if (den == 0) throw InvalidInput("ratio with zero denominator");
  if (decimals < 0 || decimals > 9) throw InvalidInput("decimals out of range");
  std::uint64_t scale = 100;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  // round(num * scale / den), half-up, in 128-bit to avoid overflow
  const auto scaled = static_cast<u128>(num) * scale;
  const auto rounded = static_cast<std::uint64_t>((2 * scaled + den) / (2 * static_cast<u128>(den)));
  std::uint64_t unit = 1;
  for (int i = 0; i < decimals; ++i) unit *= 10;
  std::string out = std::to_string(rounded / unit);
  if (decimals > 0) {
    std::string frac = std::to_string(rounded % unit);
    out += '.' + std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
  }
  return out;
}

void GroundTruth::validate() const {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i] <= points[i - 1])
      throw InvalidInput("ground-truth points must be strictly increasing");
  for (const auto& l : lines)
    if (l.bottom < l.top) throw InvalidInput("ground-truth line with bottom < top");
}

Matching match_points(std::span<const std::size_t> detected, std::span<const std::size_t> truth,
                      std::size_t tolerance) {
  struct Candidate {
    std::size_t distance, d, t;
  };
  std::vector<Candidate> candidates;
  for (std::size_t d = 0; d < detected.size(); ++d) {
    for (std::size_t t = 0; t < truth.size(); ++t) {
      const auto a = detected[d], b = truth[t];
      const auto dist = a > b ? a - b : b - a;
      if (dist <= tolerance) candidates.push_back({dist, d, t});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [&](const Candidate& x, const Candidate& y) {
    return std::tie(x.distance, detected[x.d], x.d, truth[x.t], x.t) <
           std::tie(y.distance, detected[y.d], y.d, truth[y.t], y.t);
  });

  std::vector<bool> used_d(detected.size(), false), used_t(truth.size(), false);
  Matching m;
  for (const auto& c : candidates) {
    if (used_d[c.d] || used_t[c.t]) continue;
    used_d[c.d] = used_t[c.t] = true;
    m.pairs.push_back({detected[c.d], truth[c.t], c.distance});
  }
  std::sort(m.pairs.begin(), m.pairs.end(), [](const MatchPair& x, const MatchPair& y) {
    return std::tie(x.detected, x.truth) < std::tie(y.detected, y.truth);
  });
  for (std::size_t d = 0; d < detected.size(); ++d)
    if (!used_d[d]) m.unmatched_detected.push_back(detected[d]);
  for (std::size_t t = 0; t < truth.size(); ++t)
    if (!used_t[t]) m.unmatched_truth.push_back(truth[t]);
  return m;
}

Ratio detection_rate(std::uint64_t o2o, std::uint64_t n) {
  if (n == 0) throw InvalidInput("detection rate needs N > 0");
  if (o2o > n) throw InvalidInput("o2o cannot exceed N");
  return {o2o, n};
}

Ratio tn_rate(std::uint64_t under_count, std::uint64_t total_lines) {
  if (total_lines == 0) throw InvalidInput("TN needs total_lines > 0");
  return {under_count, total_lines};
}

Ratio fp_rate(std::uint64_t over_count, std::uint64_t total_lines) {
  if (total_lines == 0) throw InvalidInput("FP needs total_lines > 0");
  return {over_count, total_lines};
}

std::uint64_t expected_point_count(std::uint64_t total_lines) {
  if (total_lines == 0) throw InvalidInput("a page needs at least one line");
  return total_lines - 1 + 2;
}

std::size_t default_tolerance(const BandList& bands) {
  const auto med2 = twice_median_width(bands, BandKind::Text);
  return std::max<std::size_t>(3, static_cast<std::size_t>(med2 / 4));
}

EvalReport evaluate(const SeparatorPoints& detected, const GroundTruth& truth,
                    std::size_t tolerance, const BandList* bands,
                    const RefinementTrace* trace) {
  truth.validate();
  if (truth.total_lines == 0) throw InvalidInput("ground truth has no lines");
  if (bands && bands->height() != detected.height)
    throw InvalidInput("band list does not belong to the detected points");

  const auto m = match_points(detected.points, truth.points, tolerance);
  EvalReport r;
  r.side = detected.side;
  r.tolerance = tolerance;
  r.o2o = m.o2o();
  r.n = truth.points.size();
  r.total_lines = truth.total_lines;
  r.dr = r.n > 0 ? detection_rate(r.o2o, r.n) : Ratio{0, 1};
  r.matches = m.pairs;
  r.unmatched_truth = m.unmatched_truth;
  r.unmatched_detected = m.unmatched_detected;

  for (auto row : m.unmatched_truth) {
    if (!bands) {
      ++r.under_count;
    } else if (row < bands->height() &&
               (*bands)[bands->index_of(row)].kind == BandKind::Text) {
      ++r.under_count;
    }
  }
  for (auto row : m.unmatched_detected) {
    if (truth.lines.empty()) {
      ++r.over_count;
      continue;
    }
    const bool in_line = std::any_of(truth.lines.begin(), truth.lines.end(),
                                     [row](const LineExtent& l) { return l.top <= row && row <= l.bottom; });
    if (in_line) ++r.over_count;
  }
  r.tn = tn_rate(r.under_count, r.total_lines);
  r.fp = fp_rate(r.over_count, r.total_lines);
  if (trace) {
    r.corrected_under = trace->inserted_separators.size();
    r.corrected_over = trace->deleted_bands.size();
  }
  return r;
}

void EvalTotals::add(const EvalReport& report) {
  o2o += report.o2o;
  n += report.n;
  total_lines += report.total_lines;
  under_count += report.under_count;
  over_count += report.over_count;
}

}  // namespace rleseg

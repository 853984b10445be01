#include "rleseg/separator_points.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rleseg/error.hpp"

namespace rleseg {

std::string_view to_string(Provenance p) noexcept {
  return p == Provenance::Detected ? "Detected" : "Inserted";
}

Provenance provenance_from_string(std::string_view name) {
  if (name == "Detected") return Provenance::Detected;
  if (name == "Inserted") return Provenance::Inserted;
  throw InvalidInput("unknown provenance '" + std::string(name) + "'");
}

std::size_t band_midpoint(const Band& band) {
  if (band.kind != BandKind::Separator) throw InvalidInput("midpoint of a text band");
  return band.start + (band.end - band.start) / 2;
}

SeparatorPoints assemble(const BandList& bands, const RefinementTrace& trace, Side side) {
  std::vector<std::pair<std::size_t, Provenance>> tagged;
  for (const auto& b : bands.bands()) {
    if (b.kind != BandKind::Separator || b.contains(0)) continue;
    tagged.emplace_back(band_midpoint(b), Provenance::Detected);
  }
  for (auto row : trace.inserted_separators) {
    if (row >= bands.height()) throw InvalidInput("inserted separator outside the page");
    tagged.emplace_back(row, Provenance::Inserted);
  }
  std::sort(tagged.begin(), tagged.end());
  tagged.erase(std::unique(tagged.begin(), tagged.end(),
                           [](const auto& a, const auto& b) { return a.first == b.first; }),
               tagged.end());

  SeparatorPoints out{side, bands.height(), {}, {}};
  out.points.reserve(tagged.size());
  out.provenance.reserve(tagged.size());
  for (const auto& [row, prov] : tagged) {
    out.points.push_back(row);
    out.provenance.push_back(prov);
  }
  return out;
}

}  // namespace rleseg

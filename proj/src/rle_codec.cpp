#include "rleseg/rle_codec.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "rleseg/error.hpp"

namespace rleseg {

namespace {

// Strips trailing zero padding, then checks the white-first layout and the
// row sum. Row index is only used for error messages.
void normalize_row(RunRow& runs, std::uint64_t width, std::optional<std::size_t> row) {
  while (!runs.empty() && runs.back() == 0) runs.pop_back();
  if (runs.empty()) throw CorruptRow("row has no non-zero run", row);

  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (i > 0 && runs[i] == 0)
      throw CorruptRow("zero-length run at slot " + std::to_string(i + 1), row);
    if (runs[i] > std::numeric_limits<std::uint64_t>::max() - sum)
      throw CorruptRow("run sum overflows", row);
    sum += runs[i];
  }
  if (sum != width)
    throw CorruptRow("runs sum to " + std::to_string(sum) + ", width is " +
                         std::to_string(width),
                     row);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::uint64_t> parse_numbers(std::string_view line,
                                         std::optional<std::size_t> row) {
  std::vector<std::uint64_t> out;
  line = trim(line);
  if (line.empty()) throw ParseError("empty line", row);
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    auto cell = trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec == std::errc::invalid_argument || ptr != cell.data() + cell.size())
      throw ParseError("non-numeric cell '" + std::string(cell) + "'", row);
    if (ec == std::errc::result_out_of_range)
      throw ParseError("run length '" + std::string(cell) + "' out of range", row);
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

RunRow encode_row(std::span<const std::uint8_t> row) {
  if (row.empty()) throw InvalidInput("cannot encode an empty row");
  RunRow runs;
  std::uint8_t colour = 0;  // rows always open with a white slot
  RunLength length = 0;
  for (auto px : row) {
    const std::uint8_t bit = px ? 1 : 0;
    if (bit != colour) {
      runs.push_back(length);
      colour = bit;
      length = 0;
    }
    ++length;
  }
  runs.push_back(length);
  return runs;
}

BitRow decode_row(std::span<const RunLength> runs, std::uint64_t width) {
  RunRow copy(runs.begin(), runs.end());
  normalize_row(copy, width, std::nullopt);
  BitRow out;
  out.reserve(width);
  for (std::size_t i = 0; i < copy.size(); ++i)
    out.insert(out.end(), copy[i], static_cast<std::uint8_t>(i % 2));
  return out;
}

RleDocument::RleDocument(std::uint64_t width, std::vector<RunRow> rows)
    : width_(width), rows_(std::move(rows)) {
  if (width_ == 0) throw InvalidInput("document width must be at least 1");
  if (rows_.empty()) throw InvalidInput("document height must be at least 1");
  for (std::size_t r = 0; r < rows_.size(); ++r) normalize_row(rows_[r], width_, r);
}

std::size_t RleDocument::run_count() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

RleDocument encode_image(const Raster& raster) {
  if (raster.height() == 0 || raster.width() == 0)
    throw InvalidInput("cannot encode an empty raster");
  std::vector<RunRow> rows;
  rows.reserve(raster.height());
  for (std::size_t r = 0; r < raster.height(); ++r) rows.push_back(encode_row(raster.row(r)));
  return RleDocument(raster.width(), std::move(rows));
}

RleDocument encode_image(std::span<const BitRow> rows) {
  if (rows.empty()) throw InvalidInput("cannot encode an image with no rows");
  const auto width = rows.front().size();
  std::vector<RunRow> runs;
  runs.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width)
      throw InvalidInput("ragged raster at row " + std::to_string(r));
    runs.push_back(encode_row(rows[r]));
  }
  return RleDocument(width, std::move(runs));
}

Raster decode_image(const RleDocument& doc) {
  Raster out(doc.width(), doc.height());
  for (std::size_t r = 0; r < doc.height(); ++r) {
    auto dst = out.row(r);
    std::size_t col = 0;
    const auto& runs = doc.row(r);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const std::uint8_t bit = i % 2;
      for (RunLength k = 0; k < runs[i]; ++k) dst[col++] = bit;
    }
  }
  return out;
}

RleDocument read_rle_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing width,height header");
  std::vector<std::uint64_t> header;
  try {
    header = parse_numbers(line, std::nullopt);
  } catch (const ParseError& e) {
    throw ParseError(std::string("bad header: ") + e.what());
  }
  if (header.size() != 2) throw ParseError("header must be 'width,height'");
  const auto width = header[0];
  const auto height = header[1];
  if (width == 0) throw ParseError("width must be at least 1");
  if (height == 0) throw ParseError("height must be at least 1");

  std::vector<RunRow> rows;
  rows.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(height, 1u << 20)));
  while (rows.size() < height && std::getline(in, line)) {
    const std::size_t r = rows.size();
    RunRow runs = parse_numbers(line, r);
    normalize_row(runs, width, r);
    rows.push_back(std::move(runs));
  }
  if (rows.size() != height)
    throw ParseError("expected " + std::to_string(height) + " rows, found " +
                     std::to_string(rows.size()));
  while (std::getline(in, line)) {
    if (!trim(line).empty())
      throw ParseError("trailing data after " + std::to_string(height) + " rows");
  }
  return RleDocument(width, std::move(rows));
}

RleDocument read_rle_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_rle_csv(in);
}

void write_rle_csv(const RleDocument& doc, std::ostream& out) {
  out << doc.width() << ',' << doc.height() << '\n';
  for (const auto& row : doc.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
}

void write_rle_csv(const RleDocument& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_rle_csv(doc, out);
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace rleseg

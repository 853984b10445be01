#include "rleseg/pbm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "rleseg/error.hpp"

namespace rleseg {

namespace {

void skip_space_and_comments(std::istream& in) {
  while (true) {
    int c = in.peek();
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

std::size_t read_header_int(std::istream& in, const char* what) {
  skip_space_and_comments(in);
  std::size_t value = 0;
  bool any = false;
  while (std::isdigit(in.peek())) {
    value = value * 10 + static_cast<std::size_t>(in.get() - '0');
    any = true;
    if (value > (std::size_t{1} << 32)) throw ParseError(std::string("PBM ") + what + " too large");
  }
  if (!any) throw ParseError(std::string("PBM header: missing ") + what);
  return value;
}

}  // namespace

Raster read_pbm(std::istream& in) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2) || magic[0] != 'P' || (magic[1] != '1' && magic[1] != '4'))
    throw UnsupportedFormat("unsupported format: expected a P1 or P4 PBM bitmap");

  const auto width = read_header_int(in, "width");
  const auto height = read_header_int(in, "height");
  if (width == 0 || height == 0) throw ParseError("PBM has zero width or height");

  Raster raster(width, height);
  if (magic[1] == '1') {
    for (std::size_t r = 0; r < height; ++r) {
      for (std::size_t c = 0; c < width; ++c) {
        skip_space_and_comments(in);
        int ch = in.get();
        if (ch != '0' && ch != '1')
          throw ParseError("P1 body truncated or has a non-binary sample", r);
        raster.set(r, c, ch == '1');
      }
    }
  } else {
    // Exactly one whitespace byte separates the header from packed data.
    int sep = in.get();
    if (sep == EOF || !std::isspace(sep)) throw ParseError("P4 header not terminated");
    const std::size_t stride = (width + 7) / 8;
    std::string packed(stride, '\0');
    for (std::size_t r = 0; r < height; ++r) {
      if (!in.read(packed.data(), static_cast<std::streamsize>(stride)))
        throw ParseError("P4 body truncated", r);
      auto dst = raster.row(r);
      for (std::size_t c = 0; c < width; ++c) {
        const auto byte = static_cast<unsigned char>(packed[c / 8]);
        dst[c] = (byte >> (7 - c % 8)) & 1u;
      }
    }
  }
  return raster;
}

Raster read_pbm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_pbm(in);
}

void write_pbm(const Raster& raster, std::ostream& out, PbmEncoding encoding) {
  if (encoding == PbmEncoding::Plain) {
    out << "P1\n" << raster.width() << ' ' << raster.height() << '\n';
    for (std::size_t r = 0; r < raster.height(); ++r) {
      auto row = raster.row(r);
      // Plain PBM lines should stay under 70 characters.
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (row[c] ? '1' : '0');
        if ((c + 1) % 64 == 0 && c + 1 != row.size()) out << '\n';
      }
      out << '\n';
    }
    return;
  }
  out << "P4\n" << raster.width() << ' ' << raster.height() << '\n';
  const std::size_t stride = (raster.width() + 7) / 8;
  std::string packed;
  for (std::size_t r = 0; r < raster.height(); ++r) {
    packed.assign(stride, '\0');
    auto row = raster.row(r);
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c]) packed[c / 8] = static_cast<char>(packed[c / 8] | (0x80 >> (c % 8)));
    out.write(packed.data(), static_cast<std::streamsize>(stride));
  }
}

void write_pbm(const Raster& raster, const std::filesystem::path& path, PbmEncoding encoding) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_pbm(raster, out, encoding);
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace rleseg

#pragma once

#include <filesystem>
#include <iosfwd>

#include "rleseg/raster.hpp"

namespace rleseg {

// Netpbm bitmap I/O. 1 = black = ink, matching Raster's convention.

enum class PbmEncoding { Plain /* P1 */, Raw /* P4 */ };

/// Reads P1 or P4. Any other magic number throws UnsupportedFormat; a
/// truncated or malformed body throws ParseError.
Raster read_pbm(std::istream& in);
Raster read_pbm(const std::filesystem::path& path);

void write_pbm(const Raster& raster, std::ostream& out,
               PbmEncoding encoding = PbmEncoding::Raw);
void write_pbm(const Raster& raster, const std::filesystem::path& path,
               PbmEncoding encoding = PbmEncoding::Raw);

}  // namespace rleseg

#pragma once

#include <string>

#include "roughcp/height_field.hpp"

namespace roughcp {

// Binary (P5) grayscale PGM, 8- or 16-bit; 16-bit samples are big-endian.
HeightField read_pgm(const std::string& path);

// Rescales [min, max] of the field linearly onto [0, maxval]; a constant
// field writes all zeros. bitdepth selects maxval 255 or 65535. A non-empty
// comment goes into a '#' header line.
void write_pgm(const std::string& path, const HeightField& field, int bitdepth = 16,
               const std::string& comment = "");

// Whitespace- or comma-separated "x y z" lines; '#' starts a comment.
PointCloud read_xyz(const std::string& path);

}  // namespace roughcp

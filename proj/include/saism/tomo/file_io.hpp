#pragma once

#include <filesystem>

#include "saism/tomo/image.hpp"
#include "saism/tomo/sinogram.hpp"

namespace saism::tomo {

/// Text header "SINO <views> <bins>\n" followed by views * bins little-endian
/// IEEE-754 doubles, view-major.
void write_sinogram(const std::filesystem::path& path, const Sinogram& sinogram);
Sinogram read_sinogram(const std::filesystem::path& path);

/// Binary 16-bit PGM (P5, maxval 65535, big-endian samples as the format
/// requires). Pixel value v maps to round((v - min) / (max - min) * 65535);
/// a constant image maps to 0. The range is written to `<path>.range` as
/// "min max" so read_pgm can invert the mapping up to quantization.
void write_pgm(const std::filesystem::path& path, const Image& image);
Image read_pgm(const std::filesystem::path& path);

std::filesystem::path range_sidecar(const std::filesystem::path& pgm);

}  // namespace saism::tomo

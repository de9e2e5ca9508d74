#include "saism/tomo/file_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace saism::tomo {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error(path.string() + ": " + what);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open for reading");
  return in;
}

}  // namespace

void write_sinogram(const std::filesystem::path& path, const Sinogram& sinogram) {
  sinogram.validate();
  std::ofstream out = open_out(path);
  out << "SINO " << sinogram.views << ' ' << sinogram.bins << '\n';
  for (double v : sinogram.values) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    out.write(bytes, 8);
  }
  if (!out) fail(path, "write failed");
}

Sinogram read_sinogram(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string header;
  if (!std::getline(in, header)) fail(path, "missing header");
  std::istringstream hs(header);
  std::string tag;
  Sinogram s;
  if (!(hs >> tag >> s.views >> s.bins) || tag != "SINO")
    fail(path, "bad header '" + header + "'");
  s.values.resize(s.views * s.bins);
  for (double& v : s.values) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) fail(path, "truncated sample data");
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    v = std::bit_cast<double>(bits);
  }
  if (in.peek() != std::char_traits<char>::eof()) fail(path, "trailing bytes after samples");
  return s;
}

std::filesystem::path range_sidecar(const std::filesystem::path& pgm) {
  std::filesystem::path p = pgm;
  p += ".range";
  return p;
}

void write_pgm(const std::filesystem::path& path, const Image& image) {
  double lo = 0.0, hi = 0.0;
  if (image.size() > 0) {
    lo = hi = image.values().front();
    for (double v : image.values()) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  std::ofstream out = open_out(path);
  out << "P5\n" << image.cols() << ' ' << image.rows() << "\n65535\n";
  const double span = hi - lo;
  for (double v : image.values()) {
    const double scaled = span > 0.0 ? (v - lo) / span * 65535.0 : 0.0;
    const auto q = static_cast<std::uint16_t>(std::lround(std::clamp(scaled, 0.0, 65535.0)));
    const char bytes[2] = {static_cast<char>(q >> 8), static_cast<char>(q & 0xffu)};
    out.write(bytes, 2);
  }
  if (!out) fail(path, "write failed");

  std::ofstream side = open_out(range_sidecar(path));
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g %.17g\n", lo, hi);
  side << buf;
  if (!side) fail(range_sidecar(path), "write failed");
}

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string magic;
  std::size_t cols = 0, rows = 0, maxval = 0;
  if (!(in >> magic >> cols >> rows >> maxval) || magic != "P5" || maxval != 65535)
    fail(path, "not a 16-bit binary PGM");
  in.get();  // single whitespace before raster
  std::vector<double> values(rows * cols);

  double lo = 0.0, hi = 0.0;
  std::ifstream side(range_sidecar(path));
  if (!(side >> lo >> hi)) fail(range_sidecar(path), "missing or malformed range sidecar");

  for (double& v : values) {
    unsigned char bytes[2];
    if (!in.read(reinterpret_cast<char*>(bytes), 2)) fail(path, "truncated raster");
    const unsigned q = (static_cast<unsigned>(bytes[0]) << 8) | bytes[1];
    v = lo + (hi - lo) * static_cast<double>(q) / 65535.0;
  }
  return Image(rows, cols, std::move(values));
}

}  // namespace saism::tomo

#include "nlgauge/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nlgauge {
namespace {

constexpr const char* kMagic = "GFLD1";

void put_le(std::ostream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<char>(bits & 0xFFu);
    bits >>= 8;
  }
  os.write(bytes, 8);
}

double get_le(std::istream& is) {
  unsigned char bytes[8];
  if (!is.read(reinterpret_cast<char*>(bytes), 8)) {
    throw std::runtime_error("snapshot: truncated payload");
  }
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | bytes[i];
  return std::bit_cast<double>(bits);
}

std::string format_length(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_snapshot(std::ostream& os, const WaveFunction& psi) {
  const Grid& g = psi.grid();
  os << kMagic << ' ' << g.dims();
  for (int a = 0; a < g.dims(); ++a) os << ' ' << g.points(a);
  for (int a = 0; a < g.dims(); ++a) os << ' ' << format_length(g.length(a));
  os << '\n';
  for (const auto& z : psi.values()) {
    put_le(os, z.real());
    put_le(os, z.imag());
  }
  if (!os) throw std::runtime_error("snapshot: write failed");
}

WaveFunction read_snapshot(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("snapshot: missing header");
  std::istringstream hs(header);
  std::string magic;
  int d = 0;
  hs >> magic >> d;
  if (magic != kMagic) throw std::runtime_error("snapshot: bad magic '" + magic + "'");
  if (d < 1 || d > 3) throw std::runtime_error("snapshot: bad dimension");
  std::vector<std::size_t> n(d);
  std::vector<double> l(d);
  for (auto& v : n) hs >> v;
  for (auto& v : l) hs >> v;
  if (!hs) throw std::runtime_error("snapshot: malformed header '" + header + "'");
  std::string rest;
  if (hs >> rest) throw std::runtime_error("snapshot: trailing header tokens");
  Grid grid(n, l);
  ComplexArray values(grid.size());
  for (auto& z : values) {
    const double re = get_le(is);
    const double im = get_le(is);
    z = Complex(re, im);
  }
  if (is.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("snapshot: trailing bytes after payload");
  }
  return WaveFunction(std::move(grid), std::move(values));
}

void save_snapshot(const std::filesystem::path& path, const WaveFunction& psi) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path.string());
  write_snapshot(os, psi);
}

WaveFunction load_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path.string());
  return read_snapshot(is);
}

}  // namespace nlgauge

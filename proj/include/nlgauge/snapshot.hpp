#pragma once

#include <filesystem>
#include <iosfwd>

#include "nlgauge/field.hpp"

namespace nlgauge {

// Field snapshot format, version 1:
//
//   GFLD1 d n1 [n2 n3] L1 [L2 L3]\n
//   prod(n_i) pairs (re, im) of IEEE-754 float64, little-endian, row-major.
//
// Lengths are printed with 17 significant digits so they round-trip exactly.

void write_snapshot(std::ostream& os, const WaveFunction& psi);
WaveFunction read_snapshot(std::istream& is);

void save_snapshot(const std::filesystem::path& path, const WaveFunction& psi);
WaveFunction load_snapshot(const std::filesystem::path& path);

}  // namespace nlgauge

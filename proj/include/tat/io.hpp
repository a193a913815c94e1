#pragma once

#include <string>

#include "tat/grids.hpp"

namespace tat::io {

// Binary container format, little-endian:
//   bytes 0..7   magic "TATD0001"
//   u32          record type (1 sinogram, 2 image, 10..16 radon kinds)
//   u32 dims[2]  slow axis, fast axis
//   f64 x4       axis0 origin, axis0 spacing, axis1 origin, axis1 spacing
//   f64 payload  dims[0]*dims[1] values, row-major, slow axis first
// Writers go through a temp file plus rename so a failed write leaves
// nothing behind.

void write_sinogram(const std::string& path, const Sinogram& s);
void write_radon(const std::string& path, const RadonData& d);
void write_image(const std::string& path, const Image& img);

Sinogram read_sinogram(const std::string& path);
RadonData read_radon(const std::string& path);
Image read_image(const std::string& path);

uint32_t peek_record_type(const std::string& path);

// CSV mirror of the binary layout: one header line, then dims[0] rows of
// dims[1] comma-separated values.
void write_csv(const std::string& path, const Sinogram& s);
void write_csv(const std::string& path, const RadonData& d);
void write_csv(const std::string& path, const Image& img);

// 16-bit binary PGM, linearly mapped over [lo, hi]; the mapping is recorded
// in a sidecar text file "<path>.range.txt".
void write_pgm16(const std::string& path, const Image& img, double lo, double hi);
void write_pgm16(const std::string& path, const Image& img);  // lo/hi from data

}  // namespace tat::io

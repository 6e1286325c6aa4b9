#pragma once

#include <filesystem>

#include "aebench/image.hpp"

namespace aebench {

// Binary 16-bit portable graymap (P5, maxval 4095, big-endian samples).
// Only pixel data and dimensions travel through the file; exposure and
// timestamps live in the sequence manifest.
void save_pgm16(const std::filesystem::path& path, const RawImage& img);

// Reads a binary P5 graymap with a two-byte maxval. Samples above 4095 are
// rejected with IoError, as are malformed headers or truncated payloads.
RawImage load_pgm16(const std::filesystem::path& path);

}  // namespace aebench

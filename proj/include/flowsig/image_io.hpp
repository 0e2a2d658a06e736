#pragma once

#include <filesystem>
#include <string>

#include "flowsig/image.hpp"

namespace flowsig {

// Decodes a PNG, binary PPM (P6) or binary PGM (P5) frame; grayscale inputs
// are replicated across channels. Throws IoError / ParseError.
RgbFrame read_frame(const std::filesystem::path& path);

// Binary PGM with 0 = background, 255 = foreground.
void write_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path);
void write_roi_pgm(const BinaryRoi& roi, const std::filesystem::path& path);

// Reads a PGM back as a binary ROI; values >= 128 count as foreground and
// the polygon count is recomputed from the bits.
BinaryRoi read_roi_pgm(const std::filesystem::path& path);

// Binary PPM (P6) writer, used for color frame fixtures.
void write_frame_ppm(const RgbFrame& frame, const std::filesystem::path& path);

// Writes via a temp file in the same directory plus an atomic rename, so
// readers never observe partial output.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace flowsig

#pragma once

#include <filesystem>
#include <span>

#include "sht/affine.hpp"
#include "sht/image.hpp"

namespace sht::bench {

/// Decodes a JPEG/PNG/BMP file. Throws std::runtime_error on failure.
RgbFrame read_frame(const std::filesystem::path& file);

/// Writes a lossless PNG.
void write_frame(const std::filesystem::path& file, const RgbFrame& frame);

struct Overlay {
  AffineState state;
  unsigned char r = 255, g = 0, b = 0;
};

/// Writes `frame` as PNG with each state's quadrilateral drawn on top.
void write_annotated(const std::filesystem::path& file, const RgbFrame& frame, std::span<const Overlay> overlays);

}  // namespace sht::bench

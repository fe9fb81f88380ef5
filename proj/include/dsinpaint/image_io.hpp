#pragma once

#include "dsinpaint/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dsinpaint {

/// Reads an 8-bit greyscale binary PGM (P5, maxval 255) or PNG. The format is
/// detected from the file signature. Throws IoError.
ImageGrid load_image(const std::string& path);

/// Writes 8-bit greyscale; the format follows the extension (.pgm or .png).
/// Values are clamped to [0, 255] and rounded half up.
void save_image(const ImageGrid& img, const std::string& path);

/// Pixels >= 128 are known (white = known).
MaskGrid load_mask(const std::string& path);

/// Same, additionally requiring the dimensions of `img`.
MaskGrid load_mask(const std::string& path, const ImageGrid& img);

void save_mask(const MaskGrid& mask, const std::string& path);

/// Clamp to [0, 255] and round half up.
std::uint8_t quantise(double value) noexcept;

} // namespace dsinpaint

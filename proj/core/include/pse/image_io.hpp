#pragma once

#include <filesystem>

#include "pse/image.hpp"

namespace pse {

/// Decodes a PNG or JPEG file into 8-bit RGB. Grayscale inputs are promoted,
/// alpha is dropped, 16-bit PNGs are reduced to 8 bits. The format is sniffed
/// from the file signature, not the extension.
///
/// Throws Error with FileNotFound, UnsupportedFormat or CorruptImage.
RgbImage load_image(const std::filesystem::path& path);

/// Like load_image, but collapses colour input to a single channel. Used for
/// ground-truth masks.
GrayImage load_gray(const std::filesystem::path& path);

/// Writes an 8-bit grayscale PNG. Output bytes depend only on the raster.
void write_png(const std::filesystem::path& path, const GrayImage& img);
void write_png(const std::filesystem::path& path, const RgbImage& img);

}  // namespace pse

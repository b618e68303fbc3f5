#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace coverart {

// RGB image, values in [0,1], interleaved row-major (r,g,b per pixel).
struct Image {
  size_t size = 0;  // square, size x size
  std::vector<double> data;

  Image() = default;
  explicit Image(size_t s) : size(s), data(3 * s * s, 0.0) {}
  double& at(size_t y, size_t x, size_t c) { return data[3 * (y * size + x) + c]; }
  double at(size_t y, size_t x, size_t c) const { return data[3 * (y * size + x) + c]; }
};

// Quantize to 8-bit with round(v * 255), clamped to [0,255].
std::vector<unsigned char> quantize(const Image& img);

void write_ppm(const Image& img, const std::string& path);
Image read_ppm(const std::string& path);

bool png_supported();
void write_png(const Image& img, const std::string& path);  // throws if unsupported
Image read_png(const std::string& path);

// Write .png when built with libpng, else .ppm; returns the path used.
std::string write_image_auto(const Image& img, const std::string& path_no_ext);
Image read_image(const std::string& path);  // dispatch on extension

// Tile images into a grid (row-major), separated by 1px black lines.
Image montage(const std::vector<Image>& imgs, size_t columns);

}  // namespace coverart

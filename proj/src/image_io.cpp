#include "coverart/image_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#ifdef COVERART_HAVE_PNG
#include <png.h>
#endif

namespace coverart {

std::vector<unsigned char> quantize(const Image& img) {
  std::vector<unsigned char> out(img.data.size());
  for (size_t i = 0; i < img.data.size(); ++i) {
    double v = std::round(img.data[i] * 255.0);
    if (v < 0.0) v = 0.0;
    if (v > 255.0) v = 255.0;
    out[i] = static_cast<unsigned char>(v);
  }
  return out;
}

void write_ppm(const Image& img, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f << "P6\n" << img.size << " " << img.size << "\n255\n";
  const auto bytes = quantize(img);
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

Image read_ppm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::string magic;
  f >> magic;
  if (magic != "P6") throw std::runtime_error("not a P6 ppm: " + path);
  size_t w = 0, h = 0, maxv = 0;
  f >> w >> h >> maxv;
  if (w != h || maxv != 255)
    throw std::runtime_error("unsupported ppm (need square, 255): " + path);
  f.get();  // single whitespace after header
  Image img(w);
  std::vector<unsigned char> bytes(3 * w * h);
  f.read(reinterpret_cast<char*>(bytes.data()),
         static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("truncated ppm: " + path);
  for (size_t i = 0; i < bytes.size(); ++i)
    img.data[i] = static_cast<double>(bytes[i]) / 255.0;
  return img;
}

bool png_supported() {
#ifdef COVERART_HAVE_PNG
  return true;
#else
  return false;
#endif
}

#ifdef COVERART_HAVE_PNG
void write_png(const Image& img, const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("cannot open for write: " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    std::fclose(fp);
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("png write failed: " + path);
  }
  png_init_io(png, fp);
  const size_t s = img.size;
  png_set_IHDR(png, info, static_cast<png_uint_32>(s), static_cast<png_uint_32>(s), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const auto bytes = quantize(img);
  for (size_t y = 0; y < s; ++y)
    png_write_row(png, const_cast<png_bytep>(bytes.data() + 3 * y * s));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

Image read_png(const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw std::runtime_error("cannot open: " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    std::fclose(fp);
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("png read failed: " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  const size_t w = png_get_image_width(png, info);
  const size_t h = png_get_image_height(png, info);
  png_set_expand(png);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);
  if (w != h) {
    std::fclose(fp);
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("png not square: " + path);
  }
  Image img(w);
  std::vector<unsigned char> row(3 * w);
  for (size_t y = 0; y < h; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (size_t i = 0; i < row.size(); ++i)
      img.data[3 * y * w + i] = static_cast<double>(row[i]) / 255.0;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
  return img;
}
#else
void write_png(const Image&, const std::string&) {
  throw std::runtime_error("built without png support");
}
Image read_png(const std::string&) {
  throw std::runtime_error("built without png support");
}
#endif

std::string write_image_auto(const Image& img, const std::string& path_no_ext) {
  if (png_supported()) {
    const std::string p = path_no_ext + ".png";
    write_png(img, p);
    return p;
  }
  const std::string p = path_no_ext + ".ppm";
  write_ppm(img, p);
  return p;
}

Image read_image(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".png") == 0)
    return read_png(path);
  return read_ppm(path);
}

Image montage(const std::vector<Image>& imgs, size_t columns) {
  if (imgs.empty()) throw std::invalid_argument("montage: empty");
  const size_t s = imgs[0].size;
  const size_t rows = (imgs.size() + columns - 1) / columns;
  // square canvas large enough for the grid; gaps stay black
  const size_t W = columns * (s + 1) - 1, H = rows * (s + 1) - 1;
  Image out(std::max(W, H));
  for (size_t i = 0; i < imgs.size(); ++i) {
    const size_t gy = i / columns, gx = i % columns;
    for (size_t y = 0; y < s; ++y)
      for (size_t x = 0; x < s; ++x)
        for (size_t c = 0; c < 3; ++c)
          out.at(gy * (s + 1) + y, gx * (s + 1) + x, c) = imgs[i].at(y, x, c);
  }
  return out;
}

}  // namespace coverart

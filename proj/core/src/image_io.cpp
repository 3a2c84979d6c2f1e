#include "pse/image_io.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "pse/error.hpp"

namespace pse {
namespace {

enum class Format { Png, Jpeg, Unknown };

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::FileNotFound, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Format sniff(const std::vector<unsigned char>& bytes) {
  static constexpr unsigned char kPng[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPng, 8) == 0) return Format::Png;
  if (bytes.size() >= 3 && bytes[0] == 0xff && bytes[1] == 0xd8 && bytes[2] == 0xff) {
    return Format::Jpeg;
  }
  return Format::Unknown;
}

// Decodes into either 3-channel RGB or 1-channel gray, depending on `channels`.
std::vector<unsigned char> decode_png(const std::vector<unsigned char>& bytes,
                                      const std::string& name, int channels,
                                      int& width, int& height) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::CorruptImage, name + ": " + image.message);
  }
  image.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<unsigned char> out(PNG_IMAGE_SIZE(image));
  // Background for alpha composition: white keeps transparent masks empty.
  png_color background{255, 255, 255};
  if (!png_image_finish_read(&image, &background, out.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::CorruptImage, name + ": " + msg);
  }
  width = static_cast<int>(image.width);
  height = static_cast<int>(image.height);
  png_image_free(&image);
  return out;
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// libjpeg treats a truncated stream as a warning and pads with gray.
void jpeg_emit_message(j_common_ptr cinfo, int level) {
  if (level < 0) jpeg_error_exit(cinfo);
}

std::vector<unsigned char> decode_jpeg(const std::vector<unsigned char>& bytes,
                                       const std::string& name, int channels,
                                       int& width, int& height) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  err.base.emit_message = jpeg_emit_message;
  std::vector<unsigned char> out;

  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(ErrorCode::CorruptImage, name + ": " + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = channels == 3 ? JCS_RGB : JCS_GRAYSCALE;
  jpeg_start_decompress(&cinfo);

  width = static_cast<int>(cinfo.output_width);
  height = static_cast<int>(cinfo.output_height);
  const std::size_t stride = static_cast<std::size_t>(width) * cinfo.output_components;
  out.resize(stride * static_cast<std::size_t>(height));
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.data() + stride * cinfo.output_scanline;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return out;
}

std::vector<unsigned char> decode(const std::filesystem::path& path, int channels,
                                  int& width, int& height) {
  const auto bytes = read_file(path);
  const std::string name = path.string();
  if (bytes.empty()) throw Error(ErrorCode::CorruptImage, name + ": empty file");
  switch (sniff(bytes)) {
    case Format::Png: return decode_png(bytes, name, channels, width, height);
    case Format::Jpeg: return decode_jpeg(bytes, name, channels, width, height);
    case Format::Unknown: break;
  }
  throw Error(ErrorCode::UnsupportedFormat, name + ": not a PNG or JPEG file");
}

void write_png_raw(const std::filesystem::path& path, int width, int height,
                   const unsigned char* data, png_uint_32 format) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, data, 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::FileNotFound, path.string() + ": " + msg);
  }
}

}  // namespace

RgbImage load_image(const std::filesystem::path& path) {
  int width = 0, height = 0;
  const auto raw = decode(path, 3, width, height);
  std::vector<Rgb8> pixels(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = {raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]};
  }
  return RgbImage(width, height, std::move(pixels));
}

GrayImage load_gray(const std::filesystem::path& path) {
  int width = 0, height = 0;
  auto raw = decode(path, 1, width, height);
  return GrayImage(width, height, std::vector<std::uint8_t>(raw.begin(), raw.end()));
}

void write_png(const std::filesystem::path& path, const GrayImage& img) {
  write_png_raw(path, img.width(), img.height(), img.data().data(), PNG_FORMAT_GRAY);
}

void write_png(const std::filesystem::path& path, const RgbImage& img) {
  static_assert(sizeof(Rgb8) == 3);
  write_png_raw(path, img.width(), img.height(),
                reinterpret_cast<const unsigned char*>(img.data().data()), PNG_FORMAT_RGB);
}

}  // namespace pse

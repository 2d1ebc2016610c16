#include "nwm/imageio.hpp"

#include <png.h>

#include <cerrno>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <vector>

#include "nwm/errors.hpp"

namespace nwm {

namespace {

struct FileHandle {
    FILE* fp = nullptr;
    ~FileHandle() {
        if (fp) std::fclose(fp);
    }
};

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

// Decoded 8-bit raster, 1 (gray) or 3 (rgb) channels interleaved.
struct Raster {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<unsigned char> pixels;

    unsigned char gray(int index) const {
        return pixels[static_cast<std::size_t>(index) * channels];
    }
};

Raster read_png(const std::string& path) {
    FileHandle file;
    file.fp = std::fopen(path.c_str(), "rb");
    if (!file.fp) {
        if (errno == ENOENT)
            fail(Errc::file_not_found, path);
        fail(Errc::io_error, path + ": " + std::strerror(errno));
    }

    unsigned char signature[8];
    if (std::fread(signature, 1, 8, file.fp) != 8 || png_sig_cmp(signature, 0, 8) != 0)
        fail(Errc::unsupported_format, path + ": not a PNG file");

    PngReader reader;
    reader.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!reader.png) fail(Errc::io_error, "png_create_read_struct failed");
    reader.info = png_create_info_struct(reader.png);
    if (!reader.info) fail(Errc::io_error, "png_create_info_struct failed");

    Raster raster;
    std::vector<png_bytep> row_ptrs;

    // libpng reports failures through longjmp; everything it may interrupt
    // lives in RAII objects declared above this point.
    if (setjmp(png_jmpbuf(reader.png)))
        fail(Errc::io_error, path + ": PNG decode failed");

    png_init_io(reader.png, file.fp);
    png_set_sig_bytes(reader.png, 8);
    png_read_info(reader.png, reader.info);

    const int bit_depth = png_get_bit_depth(reader.png, reader.info);
    const int color_type = png_get_color_type(reader.png, reader.info);
    if (color_type == PNG_COLOR_TYPE_PALETTE)
        fail(Errc::unsupported_format, path + ": palette PNGs are not supported");
    if (bit_depth != 8)
        fail(Errc::unsupported_format,
             path + ": bit depth " + std::to_string(bit_depth) + " (only 8-bit supported)");

    if (color_type & PNG_COLOR_MASK_ALPHA)
        png_set_strip_alpha(reader.png);
    png_read_update_info(reader.png, reader.info);

    raster.width = static_cast<int>(png_get_image_width(reader.png, reader.info));
    raster.height = static_cast<int>(png_get_image_height(reader.png, reader.info));
    raster.channels = static_cast<int>(png_get_channels(reader.png, reader.info));
    if (raster.channels != 1 && raster.channels != 3)
        fail(Errc::unsupported_format,
             path + ": " + std::to_string(raster.channels) + "-channel PNG");

    const std::size_t stride = static_cast<std::size_t>(raster.width) * raster.channels;
    raster.pixels.resize(stride * raster.height);
    row_ptrs.resize(static_cast<std::size_t>(raster.height));
    for (int y = 0; y < raster.height; ++y)
        row_ptrs[static_cast<std::size_t>(y)] = raster.pixels.data() + stride * y;

    png_read_image(reader.png, row_ptrs.data());
    png_read_end(reader.png, nullptr);
    return raster;
}

void write_png(const std::string& path, int width, int height, int channels,
               const std::vector<unsigned char>& pixels) {
    FileHandle file;
    file.fp = std::fopen(path.c_str(), "wb");
    if (!file.fp) fail(Errc::io_error, path + ": " + std::strerror(errno));

    PngWriter writer;
    writer.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!writer.png) fail(Errc::io_error, "png_create_write_struct failed");
    writer.info = png_create_info_struct(writer.png);
    if (!writer.info) fail(Errc::io_error, "png_create_info_struct failed");

    const std::size_t stride = static_cast<std::size_t>(width) * channels;
    std::vector<png_bytep> row_ptrs(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y)
        row_ptrs[static_cast<std::size_t>(y)] = const_cast<png_bytep>(pixels.data()) + stride * y;

    if (setjmp(png_jmpbuf(writer.png)))
        fail(Errc::io_error, path + ": PNG encode failed");

    png_init_io(writer.png, file.fp);
    png_set_IHDR(writer.png, writer.info, static_cast<png_uint_32>(width),
                 static_cast<png_uint_32>(height), 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(writer.png, writer.info);
    png_write_image(writer.png, row_ptrs.data());
    png_write_end(writer.png, nullptr);

    if (std::fflush(file.fp) != 0)
        fail(Errc::io_error, path + ": flush failed");
}

// Gray value of a pixel that is required to be achromatic.
int achromatic_value(const Raster& raster, int index, const std::string& path) {
    if (raster.channels == 1) return raster.gray(index);
    const unsigned char* p = &raster.pixels[static_cast<std::size_t>(index) * 3];
    if (p[0] != p[1] || p[1] != p[2])
        fail(Errc::unsupported_format,
             path + ": RGB channels differ at pixel " + std::to_string(index) +
                 " (grayscale content required)");
    return p[0];
}

}  // namespace

Image load_image(const std::string& path) {
    const Raster raster = read_png(path);
    Image image;
    image.width = raster.width;
    image.height = raster.height;
    image.data.resize(static_cast<std::size_t>(raster.width) * raster.height * 3);
    const int n = raster.width * raster.height;
    for (int i = 0; i < n; ++i) {
        if (raster.channels == 1) {
            const double v = raster.gray(i) / 255.0;
            image.set_rgb(i, {v, v, v});
        } else {
            const unsigned char* p = &raster.pixels[static_cast<std::size_t>(i) * 3];
            image.set_rgb(i, {p[0] / 255.0, p[1] / 255.0, p[2] / 255.0});
        }
    }
    return image;
}

Trimap load_trimap(const std::string& path) {
    const Raster raster = read_png(path);
    Trimap trimap;
    trimap.width = raster.width;
    trimap.height = raster.height;
    trimap.labels.resize(static_cast<std::size_t>(raster.width) * raster.height);
    const int n = raster.width * raster.height;
    for (int i = 0; i < n; ++i) {
        const int g = achromatic_value(raster, i, path);
        Label label = Label::Unknown;
        if (g >= kTrimapForegroundMin)
            label = Label::Foreground;
        else if (g <= kTrimapBackgroundMax)
            label = Label::Background;
        trimap.labels[static_cast<std::size_t>(i)] = label;
    }
    if (trimap.count(Label::Foreground) == 0)
        fail(Errc::no_known_pixels, path + ": no foreground pixel in trimap");
    if (trimap.count(Label::Background) == 0)
        fail(Errc::no_known_pixels, path + ": no background pixel in trimap");
    return trimap;
}

AlphaMatte load_alpha(const std::string& path) {
    const Raster raster = read_png(path);
    AlphaMatte matte;
    matte.width = raster.width;
    matte.height = raster.height;
    matte.alpha.resize(static_cast<std::size_t>(raster.width) * raster.height);
    const int n = raster.width * raster.height;
    for (int i = 0; i < n; ++i)
        matte.alpha[static_cast<std::size_t>(i)] = achromatic_value(raster, i, path) / 255.0;
    return matte;
}

void save_alpha(const std::string& path, const AlphaMatte& matte) {
    matte.validate();
    std::vector<unsigned char> pixels(static_cast<std::size_t>(matte.pixel_count()));
    for (int i = 0; i < matte.pixel_count(); ++i)
        pixels[static_cast<std::size_t>(i)] =
            static_cast<unsigned char>(std::lround(matte.at(i) * 255.0));
    write_png(path, matte.width, matte.height, 1, pixels);
}

void save_image(const std::string& path, const Image& image) {
    image.validate();
    std::vector<unsigned char> pixels(image.data.size());
    for (std::size_t i = 0; i < image.data.size(); ++i)
        pixels[i] = static_cast<unsigned char>(std::lround(image.data[i] * 255.0));
    write_png(path, image.width, image.height, 3, pixels);
}

void save_trimap(const std::string& path, const Trimap& trimap) {
    std::vector<unsigned char> pixels(static_cast<std::size_t>(trimap.pixel_count()));
    for (int i = 0; i < trimap.pixel_count(); ++i) {
        switch (trimap.at(i)) {
            case Label::Foreground: pixels[static_cast<std::size_t>(i)] = 255; break;
            case Label::Background: pixels[static_cast<std::size_t>(i)] = 0; break;
            case Label::Unknown:    pixels[static_cast<std::size_t>(i)] = 128; break;
        }
    }
    write_png(path, trimap.width, trimap.height, 1, pixels);
}

}  // namespace nwm

#include <doctest.h>

#include <png.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "nwm/errors.hpp"
#include "nwm/imageio.hpp"
#include "support/oracles.hpp"

using namespace nwm;

namespace {

// Writes fixture PNGs straight through libpng so the reader under test is
// exercised against bytes it did not produce.
void write_fixture_png(const std::string& path, int width, int height, int bit_depth,
                       int color_type, const std::vector<unsigned char>& bytes) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    REQUIRE(fp != nullptr);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    REQUIRE(setjmp(png_jmpbuf(png)) == 0);
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_color palette[2] = {{0, 0, 0}, {255, 255, 255}};
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_PLTE(png, info, palette, 2);
    png_write_info(png, info);

    int channels = 1;
    if (color_type == PNG_COLOR_TYPE_RGB) channels = 3;
    if (color_type == PNG_COLOR_TYPE_RGB_ALPHA) channels = 4;
    if (color_type == PNG_COLOR_TYPE_GRAY_ALPHA) channels = 2;
    const std::size_t stride =
        static_cast<std::size_t>(width) * channels * (bit_depth == 16 ? 2 : 1);
    std::vector<png_bytep> rows(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y)
        rows[static_cast<std::size_t>(y)] = const_cast<png_bytep>(bytes.data()) + stride * y;
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

}  // namespace

TEST_CASE("load_image scales 8-bit channels by 255") {
    test::TempDir dir("imageio");

    write_fixture_png(dir.file("white.png"), 1, 1, 8, PNG_COLOR_TYPE_RGB, {255, 255, 255});
    const Image white = load_image(dir.file("white.png"));
    CHECK(white.data == std::vector<double>{1.0, 1.0, 1.0});

    write_fixture_png(dir.file("black.png"), 1, 1, 8, PNG_COLOR_TYPE_RGB, {0, 0, 0});
    const Image black = load_image(dir.file("black.png"));
    CHECK(black.data == std::vector<double>{0.0, 0.0, 0.0});

    write_fixture_png(dir.file("two.png"), 2, 1, 8, PNG_COLOR_TYPE_RGB,
                      {51, 102, 204, 0, 255, 0});
    const Image two = load_image(dir.file("two.png"));
    REQUIRE(two.width == 2);
    const std::vector<double> expected = {51.0 / 255.0, 102.0 / 255.0, 204.0 / 255.0,
                                          0.0, 1.0, 0.0};
    CHECK(two.data == expected);
    CHECK(two.data[0] == doctest::Approx(0.2));
    CHECK(two.data[1] == doctest::Approx(0.4));
    CHECK(two.data[2] == doctest::Approx(0.8));
}

TEST_CASE("load_image replicates grayscale and strips alpha") {
    test::TempDir dir("imageio");

    write_fixture_png(dir.file("gray.png"), 2, 1, 8, PNG_COLOR_TYPE_GRAY, {51, 255});
    const Image gray = load_image(dir.file("gray.png"));
    const double g = 51.0 / 255.0;
    CHECK(gray.data == std::vector<double>{g, g, g, 1.0, 1.0, 1.0});

    write_fixture_png(dir.file("rgba.png"), 1, 1, 8, PNG_COLOR_TYPE_RGB_ALPHA,
                      {51, 102, 204, 7});
    const Image rgba = load_image(dir.file("rgba.png"));
    CHECK(rgba.data == std::vector<double>{51.0 / 255.0, 102.0 / 255.0, 204.0 / 255.0});
}

TEST_CASE("load_image error cases") {
    test::TempDir dir("imageio");

    CHECK_THROWS_WITH_AS(load_image(dir.file("missing.png")),
                         doctest::Contains("FileNotFound"), MattingError);

    std::FILE* fp = std::fopen(dir.file("not_png.png").c_str(), "wb");
    std::fputs("definitely not a png", fp);
    std::fclose(fp);
    CHECK_THROWS_AS(load_image(dir.file("not_png.png")), MattingError);

    write_fixture_png(dir.file("deep.png"), 1, 1, 16, PNG_COLOR_TYPE_GRAY, {0, 255});
    try {
        load_image(dir.file("deep.png"));
        FAIL("16-bit PNG must be rejected");
    } catch (const MattingError& e) {
        CHECK(e.code() == Errc::unsupported_format);
    }

    write_fixture_png(dir.file("palette.png"), 1, 1, 8, PNG_COLOR_TYPE_PALETTE, {1});
    try {
        load_image(dir.file("palette.png"));
        FAIL("palette PNG must be rejected");
    } catch (const MattingError& e) {
        CHECK(e.code() == Errc::unsupported_format);
    }
}

TEST_CASE("load_trimap maps gray levels to labels") {
    test::TempDir dir("imageio");
    // 255 / 0 / 128 plus both threshold edges.
    write_fixture_png(dir.file("tri.png"), 6, 1, 8, PNG_COLOR_TYPE_GRAY,
                      {255, 0, 128, 230, 25, 226});
    const Trimap trimap = load_trimap(dir.file("tri.png"));
    CHECK(trimap.at(0, 0) == Label::Foreground);
    CHECK(trimap.at(1, 0) == Label::Background);
    CHECK(trimap.at(2, 0) == Label::Unknown);
    CHECK(trimap.at(3, 0) == Label::Foreground);  // >= 230
    CHECK(trimap.at(4, 0) == Label::Background);  // <= 25
    CHECK(trimap.at(5, 0) == Label::Unknown);     // 226 falls between

    // Equal-channel RGB trimaps are fine; mixed channels are not.
    write_fixture_png(dir.file("tri_rgb.png"), 2, 1, 8, PNG_COLOR_TYPE_RGB,
                      {255, 255, 255, 0, 0, 0});
    const Trimap rgb = load_trimap(dir.file("tri_rgb.png"));
    CHECK(rgb.at(0, 0) == Label::Foreground);
    CHECK(rgb.at(1, 0) == Label::Background);

    write_fixture_png(dir.file("tri_bad.png"), 2, 1, 8, PNG_COLOR_TYPE_RGB,
                      {255, 255, 255, 10, 20, 30});
    try {
        load_trimap(dir.file("tri_bad.png"));
        FAIL("mixed-channel trimap must be rejected");
    } catch (const MattingError& e) {
        CHECK(e.code() == Errc::unsupported_format);
    }
}

TEST_CASE("load_trimap requires both known classes") {
    test::TempDir dir("imageio");
    write_fixture_png(dir.file("all_unknown.png"), 2, 1, 8, PNG_COLOR_TYPE_GRAY, {128, 128});
    try {
        load_trimap(dir.file("all_unknown.png"));
        FAIL("trimap without known pixels must be rejected");
    } catch (const MattingError& e) {
        CHECK(e.code() == Errc::no_known_pixels);
    }

    write_fixture_png(dir.file("no_bg.png"), 2, 1, 8, PNG_COLOR_TYPE_GRAY, {255, 128});
    CHECK_THROWS_AS(load_trimap(dir.file("no_bg.png")), MattingError);
}

TEST_CASE("save_alpha quantizes with round-half-up") {
    test::TempDir dir("imageio");
    AlphaMatte matte;
    matte.width = 3;
    matte.height = 1;
    matte.alpha = {1.0, 0.0, 0.5};
    save_alpha(dir.file("alpha.png"), matte);

    const Image image = load_image(dir.file("alpha.png"));
    CHECK(image.data[0] == 1.0);
    CHECK(image.data[3] == 0.0);
    CHECK(image.data[6] == 128.0 / 255.0);  // round(127.5) = 128
}

TEST_CASE("alpha round trip stays within the 8-bit quantization bound") {
    test::TempDir dir("imageio");
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    AlphaMatte matte;
    matte.width = 16;
    matte.height = 9;
    matte.alpha.resize(16 * 9);
    for (double& a : matte.alpha) a = uni(rng);

    save_alpha(dir.file("rt.png"), matte);
    const AlphaMatte loaded = load_alpha(dir.file("rt.png"));
    REQUIRE(loaded.alpha.size() == matte.alpha.size());
    for (std::size_t i = 0; i < matte.alpha.size(); ++i)
        CHECK(std::abs(loaded.alpha[i] - matte.alpha[i]) <= 1.0 / 510.0 + 1e-12);
}

TEST_CASE("trimap save/load is the identity on labels") {
    test::TempDir dir("imageio");
    std::mt19937 rng(23);
    const Trimap trimap = test::random_trimap(9, 7, rng);
    save_trimap(dir.file("tri.png"), trimap);
    const Trimap loaded = load_trimap(dir.file("tri.png"));
    CHECK(loaded.labels == trimap.labels);
}

TEST_CASE("pixel index convention is y * width + x") {
    Image image = Image::filled(3, 2, {0, 0, 0});
    image.set_rgb(2, 1, {1.0, 0.5, 0.25});
    CHECK(image.rgb(1 * 3 + 2).r == 1.0);
    CHECK(pixel_index(2, 1, 3) == 5);
}

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "nwm/errors.hpp"

namespace nwm {

// Shared pixel-index convention: the pixel at (x, y) has linear index
// y * width + x. Every module uses this single mapping.
inline int pixel_index(int x, int y, int width) { return y * width + x; }

struct Rgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
};

inline Rgb operator+(const Rgb& a, const Rgb& b) { return {a.r + b.r, a.g + b.g, a.b + b.b}; }
inline Rgb operator-(const Rgb& a, const Rgb& b) { return {a.r - b.r, a.g - b.g, a.b - b.b}; }
inline Rgb operator*(double s, const Rgb& a) { return {s * a.r, s * a.g, s * a.b}; }

inline double dot(const Rgb& a, const Rgb& b) { return a.r * b.r + a.g * b.g + a.b * b.b; }
inline double norm_sq(const Rgb& a) { return dot(a, a); }
inline double norm(const Rgb& a) { return std::sqrt(norm_sq(a)); }

enum class Label : unsigned char { Foreground, Background, Unknown };

// RGB raster, channels interleaved row-major, each channel in [0, 1].
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // size width * height * 3

    static Image filled(int w, int h, const Rgb& color) {
        Image img;
        img.width = w;
        img.height = h;
        img.data.resize(static_cast<std::size_t>(w) * h * 3);
        for (int i = 0; i < w * h; ++i) img.set_rgb(i, color);
        return img;
    }

    int pixel_count() const { return width * height; }

    Rgb rgb(int index) const {
        const double* p = &data[static_cast<std::size_t>(index) * 3];
        return {p[0], p[1], p[2]};
    }
    Rgb rgb(int x, int y) const { return rgb(pixel_index(x, y, width)); }

    void set_rgb(int index, const Rgb& c) {
        double* p = &data[static_cast<std::size_t>(index) * 3];
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
    }
    void set_rgb(int x, int y, const Rgb& c) { set_rgb(pixel_index(x, y, width), c); }

    void validate() const {
        if (width <= 0 || height <= 0)
            fail(Errc::invalid_argument, "image has non-positive dimensions");
        if (data.size() != static_cast<std::size_t>(width) * height * 3)
            fail(Errc::invalid_argument, "image data length != width * height * 3");
        for (double v : data)
            if (!(v >= 0.0 && v <= 1.0))
                fail(Errc::invalid_argument, "image channel outside [0, 1]");
    }
};

// Per-pixel {Foreground, Background, Unknown} annotation.
struct Trimap {
    int width = 0;
    int height = 0;
    std::vector<Label> labels;  // size width * height

    static Trimap filled(int w, int h, Label label) {
        Trimap t;
        t.width = w;
        t.height = h;
        t.labels.assign(static_cast<std::size_t>(w) * h, label);
        return t;
    }

    int pixel_count() const { return width * height; }

    Label at(int index) const { return labels[static_cast<std::size_t>(index)]; }
    Label at(int x, int y) const { return at(pixel_index(x, y, width)); }
    void set(int x, int y, Label label) { labels[static_cast<std::size_t>(pixel_index(x, y, width))] = label; }

    int count(Label label) const {
        int n = 0;
        for (Label l : labels) n += (l == label);
        return n;
    }

    // Matting is undefined without at least one pixel of each known class.
    void validate() const {
        if (width <= 0 || height <= 0)
            fail(Errc::invalid_argument, "trimap has non-positive dimensions");
        if (labels.size() != static_cast<std::size_t>(width) * height)
            fail(Errc::invalid_argument, "trimap label count != width * height");
        if (count(Label::Foreground) == 0 || count(Label::Background) == 0)
            fail(Errc::no_known_pixels, "trimap needs at least one foreground and one background pixel");
    }
};

// Per-pixel opacity in [0, 1].
struct AlphaMatte {
    int width = 0;
    int height = 0;
    std::vector<double> alpha;  // size width * height

    int pixel_count() const { return width * height; }

    double at(int index) const { return alpha[static_cast<std::size_t>(index)]; }
    double at(int x, int y) const { return at(pixel_index(x, y, width)); }

    void validate() const {
        if (width <= 0 || height <= 0)
            fail(Errc::invalid_argument, "matte has non-positive dimensions");
        if (alpha.size() != static_cast<std::size_t>(width) * height)
            fail(Errc::invalid_argument, "matte value count != width * height");
        for (double a : alpha)
            if (!(a >= 0.0 && a <= 1.0))
                fail(Errc::invalid_argument, "alpha outside [0, 1]");
    }
};

inline bool same_dims(int w1, int h1, int w2, int h2) { return w1 == w2 && h1 == h2; }

}  // namespace nwm

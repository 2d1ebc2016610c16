#pragma once

#include <vector>

#include "nwm/image.hpp"

namespace nwm {

struct SamplingParams {
    int n_samples = 10;              // boundary samples gathered per known class
    int top_pairs = 3;               // highest-confidence pairs kept per pixel
    double sigma = 0.1;              // confidence bandwidth
    double min_color_weight = 0.05;  // floor for the color-similarity weights
    double gamma_scale = 1.0;        // total terminal-edge weight per pixel
};

struct ColorSample {
    int pixel = 0;  // image pixel index
    Rgb color;
};

// Foreground/background candidates gathered for one unknown pixel.
struct SampleSet {
    std::vector<ColorSample> fg;
    std::vector<ColorSample> bg;
};

// Sampling result for the unknown region: estimated alpha and confidence per
// unknown pixel, in ascending pixel-index order.
struct DataTermField {
    int width = 0;
    int height = 0;
    std::vector<int> unknown_pixels;
    std::vector<double> alpha_hat;   // parallel to unknown_pixels, in [0, 1]
    std::vector<double> confidence;  // parallel to unknown_pixels, in [0, 1]

    bool empty() const { return unknown_pixels.empty(); }
};

// Edge weights from every pixel to the two virtual terminals, image-indexed.
struct TerminalWeights {
    std::vector<double> to_fg;
    std::vector<double> to_bg;
};

/// Projection of I onto the line from B to F, clamped to [0, 1]; degenerate
/// pairs (|F-B|^2 < 1e-12) estimate 0.5.
double estimate_alpha_pair(const Rgb& i, const Rgb& f, const Rgb& b);

/// |I - (a F + (1-a) B)| / |F - B|; degenerate pairs (|F-B| < 1e-6) return
/// the 1e6 sentinel so they rank last.
double pair_distance_ratio(const Rgb& i, const Rgb& f, const Rgb& b, double alpha_hat);

/// exp(-Rd^2 * wF * wB / sigma^2), in (0, 1].
double pair_confidence(double distance_ratio, double w_fg, double w_bg, double sigma);

/// The n_samples spatially nearest foreground and background boundary pixels
/// to `pixel` (a boundary pixel is a known pixel with at least one unknown
/// 4-neighbor). Fewer are returned when fewer exist; ties in distance break
/// toward the lower pixel index. Throws NoForegroundSamples /
/// NoBackgroundSamples when a class has no boundary pixels at all.
SampleSet collect_samples(const Trimap& trimap, const Image& image, int pixel, int n_samples);

/// Evaluates all fg x bg sample pairs per unknown pixel, keeps the top
/// `top_pairs` by confidence, and reduces them to a per-pixel estimate
/// (confidence-weighted mean alpha) and confidence (mean of kept pair
/// confidences).
DataTermField compute_data_term(const Image& image, const Trimap& trimap,
                                const SamplingParams& params);

/// Terminal-edge weights. Unknown pixels split gamma_scale between the two
/// terminals as gamma * (f * a + (1-f) * [a > 0.5]) toward foreground and the
/// complement toward background; known pixels put all of gamma_scale on their
/// own terminal.
TerminalWeights data_weights(const DataTermField& field, const Trimap& trimap,
                             double gamma_scale);

}  // namespace nwm

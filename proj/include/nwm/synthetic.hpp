#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nwm/image.hpp"

namespace nwm {

// Composite built from constant foreground/background colors and a smooth
// alpha ramp: I = alpha * F + (1 - alpha) * B (plus optional clamped Gaussian
// color noise). Known trimap labels are exact whenever unknown_band_px >=
// transition_px, because alpha reaches 0/1 outside the transition.
struct SyntheticSpec {
    int width = 32;
    int height = 32;
    Rgb fg_color{0.85, 0.30, 0.15};
    Rgb bg_color{0.10, 0.35, 0.75};
    double angle_deg = 0.0;       // ramp direction; 0 ramps along +x
    double transition_px = 6.0;   // alpha goes 0 -> 1 across this many pixels
    int unknown_band_px = 6;      // trimap band width around the transition
    double noise_sigma = 0.0;
    std::uint32_t seed = 1;
};

struct SyntheticCase {
    Image image;
    Trimap trimap;
    AlphaMatte ground_truth;
};

/// Deterministic composite for a spec (same spec, same bytes).
SyntheticCase make_composite(const SyntheticSpec& spec);

/// Writes specs as a benchmark-layout dataset: input/, trimap1/ (the spec's
/// band), trimap2/ (double band, the coarser level), gt/. Files are named
/// synth_000.png, synth_001.png, ...
void write_benchmark_layout(const std::string& root, const std::vector<SyntheticSpec>& specs);

/// A varied, deterministic suite: ramp angles and color pairs cycle across
/// `count` cases at the given size and noise level.
std::vector<SyntheticSpec> default_suite(int count, int size, double noise_sigma,
                                         int unknown_band_px);

}  // namespace nwm

#pragma once

#include <string>

#include "nwm/image.hpp"

namespace nwm {

// Trimap gray-value decision thresholds. Values >= 230 read as foreground and
// values <= 25 as background, which tolerates slight anti-aliasing in
// hand-drawn trimaps; exact {0, 128, 255} inputs are unaffected.
inline constexpr int kTrimapForegroundMin = 230;
inline constexpr int kTrimapBackgroundMax = 25;

/// Loads an 8-bit RGB or grayscale PNG; channels are scaled to [0, 1] by
/// dividing by 255 and grayscale is replicated to three channels. An alpha
/// channel, when present, is ignored. Throws FileNotFound,
/// UnsupportedFormat (palette images, bit depth != 8) or IoError.
Image load_image(const std::string& path);

/// Loads a trimap from an 8-bit grayscale PNG (or RGB with equal channels).
/// Throws NoKnownPixels when either known class is missing entirely.
Trimap load_trimap(const std::string& path);

/// Loads a grayscale PNG as an alpha matte (value / 255).
AlphaMatte load_alpha(const std::string& path);

/// Writes an 8-bit grayscale PNG with value = round(alpha * 255).
void save_alpha(const std::string& path, const AlphaMatte& matte);

/// Writes an 8-bit RGB PNG with channel = round(value * 255).
void save_image(const std::string& path, const Image& image);

/// Writes a trimap as an 8-bit grayscale PNG: foreground 255, background 0,
/// unknown 128. Reading it back with load_trimap is the identity on labels.
void save_trimap(const std::string& path, const Trimap& trimap);

}  // namespace nwm

#pragma once

#include <stdexcept>
#include <string>

namespace nwm {

// Every recoverable failure in the library maps to one of these codes so
// callers (and tests) can branch on the condition instead of parsing strings.
enum class Errc {
    file_not_found,
    unsupported_format,
    io_error,
    no_known_pixels,
    no_foreground_samples,
    no_background_samples,
    image_too_small,
    bad_lambda,
    no_unknown_pixels,
    not_converged,
    length_mismatch,
    dimension_mismatch,
    empty_region,
    zero_baseline,
    missing_ground_truth,
    missing_trimap,
    empty_dataset,
    unsupported_backend,
    invalid_argument,
};

inline const char* errc_name(Errc code) {
    switch (code) {
        case Errc::file_not_found:        return "FileNotFound";
        case Errc::unsupported_format:    return "UnsupportedFormat";
        case Errc::io_error:              return "IoError";
        case Errc::no_known_pixels:       return "NoKnownPixels";
        case Errc::no_foreground_samples: return "NoForegroundSamples";
        case Errc::no_background_samples: return "NoBackgroundSamples";
        case Errc::image_too_small:       return "ImageTooSmall";
        case Errc::bad_lambda:            return "BadLambda";
        case Errc::no_unknown_pixels:     return "NoUnknownPixels";
        case Errc::not_converged:         return "NotConverged";
        case Errc::length_mismatch:       return "LengthMismatch";
        case Errc::dimension_mismatch:    return "DimensionMismatch";
        case Errc::empty_region:          return "EmptyRegion";
        case Errc::zero_baseline:         return "ZeroBaseline";
        case Errc::missing_ground_truth:  return "MissingGroundTruth";
        case Errc::missing_trimap:        return "MissingTrimap";
        case Errc::empty_dataset:         return "EmptyDataset";
        case Errc::unsupported_backend:   return "UnsupportedBackend";
        case Errc::invalid_argument:      return "InvalidArgument";
    }
    return "UnknownError";
}

class MattingError : public std::runtime_error {
public:
    MattingError(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw MattingError(code, message);
}

}  // namespace nwm

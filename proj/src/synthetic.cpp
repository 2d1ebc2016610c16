#include "nwm/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "nwm/errors.hpp"
#include "nwm/imageio.hpp"

namespace nwm {

namespace {

constexpr double kPi = 3.14159265358979323846;

double smoothstep01(double t) {
    t = std::clamp(t, 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

Trimap band_trimap(const SyntheticSpec& spec, int band_px) {
    const double dx = std::cos(spec.angle_deg * kPi / 180.0);
    const double dy = std::sin(spec.angle_deg * kPi / 180.0);
    const double cx = (spec.width - 1) / 2.0;
    const double cy = (spec.height - 1) / 2.0;

    Trimap trimap = Trimap::filled(spec.width, spec.height, Label::Unknown);
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            const double s = (x - cx) * dx + (y - cy) * dy;
            Label label = Label::Unknown;
            if (std::abs(s) > band_px / 2.0)
                label = s < 0.0 ? Label::Background : Label::Foreground;
            trimap.set(x, y, label);
        }
    return trimap;
}

}  // namespace

SyntheticCase make_composite(const SyntheticSpec& spec) {
    if (spec.width < 3 || spec.height < 3)
        fail(Errc::invalid_argument, "synthetic case must be at least 3x3");
    if (!(spec.transition_px > 0.0))
        fail(Errc::invalid_argument, "transition_px must be > 0");
    if (spec.unknown_band_px < 1)
        fail(Errc::invalid_argument, "unknown_band_px must be >= 1");

    const double dx = std::cos(spec.angle_deg * kPi / 180.0);
    const double dy = std::sin(spec.angle_deg * kPi / 180.0);
    const double cx = (spec.width - 1) / 2.0;
    const double cy = (spec.height - 1) / 2.0;

    SyntheticCase result;
    result.ground_truth.width = spec.width;
    result.ground_truth.height = spec.height;
    result.ground_truth.alpha.resize(static_cast<std::size_t>(spec.width) * spec.height);
    result.image.width = spec.width;
    result.image.height = spec.height;
    result.image.data.resize(static_cast<std::size_t>(spec.width) * spec.height * 3);

    std::mt19937 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            const int i = pixel_index(x, y, spec.width);
            const double s = (x - cx) * dx + (y - cy) * dy;
            const double alpha = smoothstep01(s / spec.transition_px + 0.5);
            result.ground_truth.alpha[static_cast<std::size_t>(i)] = alpha;

            Rgb color = alpha * spec.fg_color + (1.0 - alpha) * spec.bg_color;
            if (spec.noise_sigma > 0.0) {
                color.r += spec.noise_sigma * noise(rng);
                color.g += spec.noise_sigma * noise(rng);
                color.b += spec.noise_sigma * noise(rng);
            }
            color.r = std::clamp(color.r, 0.0, 1.0);
            color.g = std::clamp(color.g, 0.0, 1.0);
            color.b = std::clamp(color.b, 0.0, 1.0);
            result.image.set_rgb(i, color);
        }

    result.trimap = band_trimap(spec, spec.unknown_band_px);
    result.trimap.validate();
    return result;
}

void write_benchmark_layout(const std::string& root, const std::vector<SyntheticSpec>& specs) {
    namespace fs = std::filesystem;
    std::error_code ec;
    for (const char* sub : {"input", "trimap1", "trimap2", "gt"}) {
        fs::create_directories(fs::path(root) / sub, ec);
        if (ec) fail(Errc::io_error, "cannot create " + (fs::path(root) / sub).string());
    }

    for (std::size_t i = 0; i < specs.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "synth_%03zu.png", i);
        const SyntheticCase made = make_composite(specs[i]);

        save_image((fs::path(root) / "input" / name).string(), made.image);
        save_trimap((fs::path(root) / "trimap1" / name).string(), made.trimap);
        // Level 2 is the coarser annotation: twice the unknown band.
        save_trimap((fs::path(root) / "trimap2" / name).string(),
                    band_trimap(specs[i], specs[i].unknown_band_px * 2));
        save_alpha((fs::path(root) / "gt" / name).string(), made.ground_truth);
    }
}

std::vector<SyntheticSpec> default_suite(int count, int size, double noise_sigma,
                                         int unknown_band_px) {
    const std::vector<std::pair<Rgb, Rgb>> palettes = {
        {{0.85, 0.30, 0.15}, {0.10, 0.35, 0.75}},
        {{0.95, 0.85, 0.20}, {0.15, 0.15, 0.25}},
        {{0.20, 0.70, 0.35}, {0.70, 0.25, 0.65}},
        {{0.90, 0.90, 0.90}, {0.10, 0.10, 0.10}},
        {{0.60, 0.40, 0.20}, {0.20, 0.55, 0.70}},
    };
    const double angles[] = {0.0, 90.0, 30.0, 135.0, 60.0, 105.0};

    std::vector<SyntheticSpec> specs;
    specs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        SyntheticSpec spec;
        spec.width = size;
        spec.height = size;
        const auto& palette = palettes[static_cast<std::size_t>(i) % palettes.size()];
        spec.fg_color = palette.first;
        spec.bg_color = palette.second;
        spec.angle_deg = angles[static_cast<std::size_t>(i) % std::size(angles)];
        spec.noise_sigma = noise_sigma;
        spec.unknown_band_px = unknown_band_px;
        spec.seed = static_cast<std::uint32_t>(1000 + i);
        specs.push_back(spec);
    }
    return specs;
}

}  // namespace nwm

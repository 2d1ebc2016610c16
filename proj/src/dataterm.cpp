#include "nwm/dataterm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "nwm/errors.hpp"

namespace nwm {

namespace {

constexpr double kDegenerateDotSq = 1e-12;  // |F-B|^2 below this -> alpha 0.5
constexpr double kDegenerateDist = 1e-6;    // |F-B| below this -> sentinel ratio
constexpr double kSentinelRatio = 1e6;

void check_params(const SamplingParams& p) {
    if (p.n_samples < 1) fail(Errc::invalid_argument, "n_samples must be >= 1");
    if (p.top_pairs < 1) fail(Errc::invalid_argument, "top_pairs must be >= 1");
    if (!(p.sigma > 0.0)) fail(Errc::invalid_argument, "sigma must be > 0");
    if (!(p.min_color_weight > 0.0 && p.min_color_weight <= 1.0))
        fail(Errc::invalid_argument, "min_color_weight must be in (0, 1]");
    if (!(p.gamma_scale > 0.0)) fail(Errc::invalid_argument, "gamma_scale must be > 0");
}

bool has_unknown_4_neighbor(const Trimap& trimap, int x, int y) {
    const int w = trimap.width, h = trimap.height;
    if (x > 0 && trimap.at(x - 1, y) == Label::Unknown) return true;
    if (x + 1 < w && trimap.at(x + 1, y) == Label::Unknown) return true;
    if (y > 0 && trimap.at(x, y - 1) == Label::Unknown) return true;
    if (y + 1 < h && trimap.at(x, y + 1) == Label::Unknown) return true;
    return false;
}

// Boundary pixels of one known class, bucketed on a uniform grid for
// k-nearest queries. Ties in distance break toward the lower pixel index,
// which keeps sample sets deterministic.
class BoundaryIndex {
public:
    BoundaryIndex(const Trimap& trimap, Label label) : img_w_(trimap.width) {
        for (int y = 0; y < trimap.height; ++y)
            for (int x = 0; x < trimap.width; ++x)
                if (trimap.at(x, y) == label && has_unknown_4_neighbor(trimap, x, y))
                    points_.push_back({x, y, pixel_index(x, y, trimap.width)});

        cell_ = 1;
        if (!points_.empty()) {
            const double area = static_cast<double>(trimap.width) * trimap.height;
            cell_ = std::max(1, static_cast<int>(std::sqrt(area / static_cast<double>(points_.size()))));
        }
        grid_w_ = (trimap.width + cell_ - 1) / cell_;
        grid_h_ = (trimap.height + cell_ - 1) / cell_;
        cells_.resize(static_cast<std::size_t>(grid_w_) * grid_h_);
        for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
            const Point& p = points_[static_cast<std::size_t>(i)];
            cells_[cell_of(p.x, p.y)].push_back(i);
        }
    }

    bool empty() const { return points_.empty(); }
    std::size_t size() const { return points_.size(); }

    // Pixel indices of the k nearest boundary points to (qx, qy), ordered by
    // (squared distance, pixel index).
    std::vector<int> k_nearest(int qx, int qy, int k) const {
        using Key = std::pair<std::int64_t, int>;  // (d^2, pixel)
        std::vector<Key> best;
        best.reserve(static_cast<std::size_t>(k) + 1);
        auto consider = [&](const Point& p) {
            const std::int64_t dx = p.x - qx;
            const std::int64_t dy = p.y - qy;
            const Key key{dx * dx + dy * dy, p.pixel};
            if (static_cast<int>(best.size()) < k) {
                best.push_back(key);
                std::push_heap(best.begin(), best.end());
            } else if (key < best.front()) {
                std::pop_heap(best.begin(), best.end());
                best.back() = key;
                std::push_heap(best.begin(), best.end());
            }
        };

        if (static_cast<int>(points_.size()) <= std::max(k, 64)) {
            for (const Point& p : points_) consider(p);
        } else {
            const int qcx = std::clamp(qx / cell_, 0, grid_w_ - 1);
            const int qcy = std::clamp(qy / cell_, 0, grid_h_ - 1);
            const int max_ring = std::max(grid_w_, grid_h_);
            for (int ring = 0; ring <= max_ring; ++ring) {
                scan_ring(qcx, qcy, ring, consider);
                if (static_cast<int>(best.size()) == k) {
                    // Points in ring r+1 are at least ring * cell + 1 away;
                    // equality with the current worst key must keep scanning
                    // because a tie could break toward a lower pixel index.
                    const std::int64_t next_min = static_cast<std::int64_t>(ring) * cell_ + 1;
                    if (best.front().first < next_min * next_min) break;
                }
            }
        }

        std::sort(best.begin(), best.end());
        std::vector<int> result(best.size());
        for (std::size_t i = 0; i < best.size(); ++i) result[i] = best[i].second;
        return result;
    }

private:
    struct Point {
        int x, y, pixel;
    };

    std::size_t cell_of(int x, int y) const {
        return static_cast<std::size_t>(y / cell_) * grid_w_ + static_cast<std::size_t>(x / cell_);
    }

    template <typename Fn>
    void scan_ring(int qcx, int qcy, int ring, Fn&& consider) const {
        const int x0 = qcx - ring, x1 = qcx + ring;
        const int y0 = qcy - ring, y1 = qcy + ring;
        auto scan_cell = [&](int cx, int cy) {
            if (cx < 0 || cy < 0 || cx >= grid_w_ || cy >= grid_h_) return;
            for (int i : cells_[static_cast<std::size_t>(cy) * grid_w_ + cx])
                consider(points_[static_cast<std::size_t>(i)]);
        };
        if (ring == 0) {
            scan_cell(qcx, qcy);
            return;
        }
        for (int cx = x0; cx <= x1; ++cx) {
            scan_cell(cx, y0);
            scan_cell(cx, y1);
        }
        for (int cy = y0 + 1; cy <= y1 - 1; ++cy) {
            scan_cell(x0, cy);
            scan_cell(x1, cy);
        }
    }

    int img_w_;
    int cell_, grid_w_, grid_h_;
    std::vector<Point> points_;
    std::vector<std::vector<int>> cells_;
};

std::vector<ColorSample> make_samples(const std::vector<int>& pixels, const Image& image) {
    std::vector<ColorSample> out(pixels.size());
    for (std::size_t i = 0; i < pixels.size(); ++i)
        out[i] = {pixels[i], image.rgb(pixels[i])};
    return out;
}

// Per-pixel pair evaluation shared by compute_data_term.
struct PixelEstimate {
    double alpha_hat;
    double confidence;
};

PixelEstimate evaluate_pixel(const Rgb& color, const std::vector<ColorSample>& fg,
                             const std::vector<ColorSample>& bg, const SamplingParams& params) {
    // Color-similarity weights relative to the closest sample of each class.
    double min_fg = std::numeric_limits<double>::max();
    double min_bg = std::numeric_limits<double>::max();
    std::vector<double> fg_dist(fg.size()), bg_dist(bg.size());
    for (std::size_t s = 0; s < fg.size(); ++s) {
        fg_dist[s] = norm_sq(fg[s].color - color);
        min_fg = std::min(min_fg, fg_dist[s]);
    }
    for (std::size_t s = 0; s < bg.size(); ++s) {
        bg_dist[s] = norm_sq(bg[s].color - color);
        min_bg = std::min(min_bg, bg_dist[s]);
    }
    const double d2_fg = std::max(min_fg, 1e-12);
    const double d2_bg = std::max(min_bg, 1e-12);

    std::vector<double> w_fg(fg.size()), w_bg(bg.size());
    for (std::size_t s = 0; s < fg.size(); ++s)
        w_fg[s] = std::max(std::exp(-fg_dist[s] / d2_fg), params.min_color_weight);
    for (std::size_t s = 0; s < bg.size(); ++s)
        w_bg[s] = std::max(std::exp(-bg_dist[s] / d2_bg), params.min_color_weight);

    struct Pair {
        double alpha;
        double conf;
        int order;
    };
    std::vector<Pair> pairs;
    pairs.reserve(fg.size() * bg.size());
    int order = 0;
    for (std::size_t fi = 0; fi < fg.size(); ++fi) {
        for (std::size_t bi = 0; bi < bg.size(); ++bi, ++order) {
            const double alpha = estimate_alpha_pair(color, fg[fi].color, bg[bi].color);
            const double ratio = pair_distance_ratio(color, fg[fi].color, bg[bi].color, alpha);
            const double conf = pair_confidence(ratio, w_fg[fi], w_bg[bi], params.sigma);
            pairs.push_back({alpha, conf, order});
        }
    }

    const int keep = std::min<int>(params.top_pairs, static_cast<int>(pairs.size()));
    std::partial_sort(pairs.begin(), pairs.begin() + keep, pairs.end(),
                      [](const Pair& a, const Pair& b) {
                          return a.conf != b.conf ? a.conf > b.conf : a.order < b.order;
                      });

    double conf_sum = 0.0, weighted_alpha = 0.0, alpha_sum = 0.0;
    for (int i = 0; i < keep; ++i) {
        conf_sum += pairs[static_cast<std::size_t>(i)].conf;
        weighted_alpha += pairs[static_cast<std::size_t>(i)].conf * pairs[static_cast<std::size_t>(i)].alpha;
        alpha_sum += pairs[static_cast<std::size_t>(i)].alpha;
    }
    // All kept confidences can underflow to zero for far-away colors; fall
    // back to the plain mean so the pixel still gets an estimate.
    double alpha_hat = conf_sum > 0.0 ? weighted_alpha / conf_sum : alpha_sum / keep;
    double confidence = conf_sum / keep;
    alpha_hat = std::clamp(alpha_hat, 0.0, 1.0);
    confidence = std::clamp(confidence, 0.0, 1.0);
    return {alpha_hat, confidence};
}

}  // namespace

double estimate_alpha_pair(const Rgb& i, const Rgb& f, const Rgb& b) {
    const Rgb fb = f - b;
    const double denom = norm_sq(fb);
    if (denom < kDegenerateDotSq) return 0.5;
    return std::clamp(dot(i - b, fb) / denom, 0.0, 1.0);
}

double pair_distance_ratio(const Rgb& i, const Rgb& f, const Rgb& b, double alpha_hat) {
    const double denom = norm(f - b);
    if (denom < kDegenerateDist) return kSentinelRatio;
    const Rgb composite = alpha_hat * f + (1.0 - alpha_hat) * b;
    return norm(i - composite) / denom;
}

double pair_confidence(double distance_ratio, double w_fg, double w_bg, double sigma) {
    return std::exp(-(distance_ratio * distance_ratio) * w_fg * w_bg / (sigma * sigma));
}

SampleSet collect_samples(const Trimap& trimap, const Image& image, int pixel, int n_samples) {
    trimap.validate();
    if (!same_dims(trimap.width, trimap.height, image.width, image.height))
        fail(Errc::dimension_mismatch, "image and trimap dimensions differ");
    if (n_samples < 1) fail(Errc::invalid_argument, "n_samples must be >= 1");
    if (pixel < 0 || pixel >= trimap.pixel_count())
        fail(Errc::invalid_argument, "pixel index out of range");
    if (trimap.at(pixel) != Label::Unknown)
        fail(Errc::invalid_argument, "samples are collected for unknown pixels only");

    const BoundaryIndex fg_index(trimap, Label::Foreground);
    const BoundaryIndex bg_index(trimap, Label::Background);
    if (fg_index.empty()) fail(Errc::no_foreground_samples, "no foreground boundary pixels");
    if (bg_index.empty()) fail(Errc::no_background_samples, "no background boundary pixels");

    const int x = pixel % trimap.width;
    const int y = pixel / trimap.width;
    SampleSet set;
    set.fg = make_samples(fg_index.k_nearest(x, y, n_samples), image);
    set.bg = make_samples(bg_index.k_nearest(x, y, n_samples), image);
    return set;
}

DataTermField compute_data_term(const Image& image, const Trimap& trimap,
                                const SamplingParams& params) {
    check_params(params);
    trimap.validate();
    if (!same_dims(trimap.width, trimap.height, image.width, image.height))
        fail(Errc::dimension_mismatch, "image and trimap dimensions differ");

    DataTermField field;
    field.width = trimap.width;
    field.height = trimap.height;
    for (int i = 0; i < trimap.pixel_count(); ++i)
        if (trimap.at(i) == Label::Unknown) field.unknown_pixels.push_back(i);
    if (field.unknown_pixels.empty()) return field;

    const BoundaryIndex fg_index(trimap, Label::Foreground);
    const BoundaryIndex bg_index(trimap, Label::Background);
    if (fg_index.empty()) fail(Errc::no_foreground_samples, "no foreground boundary pixels");
    if (bg_index.empty()) fail(Errc::no_background_samples, "no background boundary pixels");

    field.alpha_hat.reserve(field.unknown_pixels.size());
    field.confidence.reserve(field.unknown_pixels.size());
    for (int pixel : field.unknown_pixels) {
        const int x = pixel % trimap.width;
        const int y = pixel / trimap.width;
        const std::vector<ColorSample> fg =
            make_samples(fg_index.k_nearest(x, y, params.n_samples), image);
        const std::vector<ColorSample> bg =
            make_samples(bg_index.k_nearest(x, y, params.n_samples), image);
        const PixelEstimate est = evaluate_pixel(image.rgb(pixel), fg, bg, params);
        field.alpha_hat.push_back(est.alpha_hat);
        field.confidence.push_back(est.confidence);
    }
    return field;
}

TerminalWeights data_weights(const DataTermField& field, const Trimap& trimap,
                             double gamma_scale) {
    if (!(gamma_scale > 0.0)) fail(Errc::invalid_argument, "gamma_scale must be > 0");
    if (!same_dims(field.width, field.height, trimap.width, trimap.height))
        fail(Errc::dimension_mismatch, "field and trimap dimensions differ");

    const int n = trimap.pixel_count();
    TerminalWeights weights;
    weights.to_fg.assign(static_cast<std::size_t>(n), 0.0);
    weights.to_bg.assign(static_cast<std::size_t>(n), 0.0);

    std::size_t u = 0;
    for (int i = 0; i < n; ++i) {
        switch (trimap.at(i)) {
            case Label::Foreground:
                weights.to_fg[static_cast<std::size_t>(i)] = gamma_scale;
                break;
            case Label::Background:
                weights.to_bg[static_cast<std::size_t>(i)] = gamma_scale;
                break;
            case Label::Unknown: {
                if (u >= field.unknown_pixels.size() || field.unknown_pixels[u] != i)
                    fail(Errc::length_mismatch, "data term field does not match trimap unknown set");
                const double a = field.alpha_hat[u];
                const double f = field.confidence[u];
                const double hard_fg = a > 0.5 ? 1.0 : 0.0;
                weights.to_fg[static_cast<std::size_t>(i)] = gamma_scale * (f * a + (1.0 - f) * hard_fg);
                weights.to_bg[static_cast<std::size_t>(i)] =
                    gamma_scale * (f * (1.0 - a) + (1.0 - f) * (1.0 - hard_fg));
                ++u;
                break;
            }
        }
    }
    if (u != field.unknown_pixels.size())
        fail(Errc::length_mismatch, "data term field does not match trimap unknown set");
    return weights;
}

}  // namespace nwm

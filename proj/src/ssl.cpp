#include "nwm/ssl.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "nwm/errors.hpp"

namespace nwm {

namespace {

void check_refinement_params(const RefinementParams& p) {
    if (!(p.t_alpha > 0.5 && p.t_alpha < 1.0))
        fail(Errc::invalid_argument, "t_alpha must lie in (0.5, 1)");
    if (!(p.t_percent > 0.0 && p.t_percent <= 1.0))
        fail(Errc::invalid_argument, "t_percent must lie in (0, 1]");
    if (p.n_iters < 0) fail(Errc::invalid_argument, "n_iters must be >= 0");
}

AlphaMatte matte_from_labels(const Trimap& trimap) {
    AlphaMatte matte;
    matte.width = trimap.width;
    matte.height = trimap.height;
    matte.alpha.resize(static_cast<std::size_t>(trimap.pixel_count()));
    for (int i = 0; i < trimap.pixel_count(); ++i)
        matte.alpha[static_cast<std::size_t>(i)] =
            trimap.at(i) == Label::Foreground ? 1.0 : 0.0;
    return matte;
}

}  // namespace

bool space_constraint(const Trimap& trimap, int pixel) {
    if (pixel < 0 || pixel >= trimap.pixel_count()) return false;
    if (trimap.at(pixel) != Label::Unknown) return false;
    const int x = pixel % trimap.width;
    const int y = pixel / trimap.width;
    auto known = [&](int nx, int ny) {
        if (nx < 0 || ny < 0 || nx >= trimap.width || ny >= trimap.height) return false;
        return trimap.at(nx, ny) != Label::Unknown;
    };
    return known(x - 1, y) || known(x + 1, y) || known(x, y - 1) || known(x, y + 1);
}

Promotion confidence_constraint(double alpha, double t_alpha) {
    if (alpha > t_alpha) return Promotion::ToForeground;
    if (alpha < 1.0 - t_alpha) return Promotion::ToBackground;
    return Promotion::None;
}

std::vector<int> proportion_select(const Trimap& trimap, const AlphaMatte& matte,
                                   double t_percent) {
    if (!(t_percent > 0.0 && t_percent <= 1.0))
        fail(Errc::invalid_argument, "t_percent must lie in (0, 1]");
    if (!same_dims(trimap.width, trimap.height, matte.width, matte.height))
        fail(Errc::dimension_mismatch, "trimap and matte dimensions differ");

    struct Ranked {
        double decidedness;  // |0.5 - alpha|
        int pixel;
    };
    std::vector<Ranked> ranked;
    for (int i = 0; i < trimap.pixel_count(); ++i)
        if (trimap.at(i) == Label::Unknown)
            ranked.push_back({std::abs(0.5 - matte.at(i)), i});
    if (ranked.empty()) return {};

    // Keep at least one candidate so a tiny unknown set still refines.
    const std::size_t take = std::min(
        ranked.size(),
        std::max<std::size_t>(1, static_cast<std::size_t>(
                                     std::floor(t_percent * static_cast<double>(ranked.size())))));
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                      ranked.end(), [](const Ranked& a, const Ranked& b) {
                          return a.decidedness != b.decidedness
                                     ? a.decidedness > b.decidedness
                                     : a.pixel < b.pixel;
                      });

    std::vector<int> selected(take);
    for (std::size_t i = 0; i < take; ++i) selected[i] = ranked[i].pixel;
    std::sort(selected.begin(), selected.end());
    return selected;
}

RefineOutcome refine_trimap(const Trimap& trimap, const AlphaMatte& matte,
                            const RefinementParams& params) {
    check_refinement_params(params);
    if (!same_dims(trimap.width, trimap.height, matte.width, matte.height))
        fail(Errc::dimension_mismatch, "trimap and matte dimensions differ");

    RefineOutcome outcome;
    outcome.trimap = trimap;
    const std::vector<int> candidates = proportion_select(trimap, matte, params.t_percent);
    for (int pixel : candidates) {
        if (!space_constraint(trimap, pixel)) continue;
        switch (confidence_constraint(matte.at(pixel), params.t_alpha)) {
            case Promotion::ToForeground:
                outcome.trimap.labels[static_cast<std::size_t>(pixel)] = Label::Foreground;
                ++outcome.promoted_fg;
                break;
            case Promotion::ToBackground:
                outcome.trimap.labels[static_cast<std::size_t>(pixel)] = Label::Background;
                ++outcome.promoted_bg;
                break;
            case Promotion::None:
                break;
        }
    }
    return outcome;
}

PipelineResult run_pipeline(const Image& image, const Trimap& trimap,
                            const PipelineConfig& config, const AlphaMatte* ground_truth) {
    check_refinement_params(config.refine);
    trimap.validate();
    if (!same_dims(image.width, image.height, trimap.width, trimap.height))
        fail(Errc::dimension_mismatch, "image and trimap dimensions differ");
    if (ground_truth &&
        !same_dims(ground_truth->width, ground_truth->height, trimap.width, trimap.height))
        fail(Errc::dimension_mismatch, "ground truth dimensions differ");

    PipelineResult result;
    if (trimap.count(Label::Unknown) == 0) {
        result.matte = matte_from_labels(trimap);
        return result;
    }

    // The smooth term depends only on the image, never on the trimap.
    const SparseSymMatrix laplacian = matting_laplacian(image, config.lap_eps);

    auto record_mse = [&](const AlphaMatte& matte) {
        if (!ground_truth) return std::numeric_limits<double>::quiet_NaN();
        return mse(matte, *ground_truth, config.mse_region, trimap);
    };

    struct Round {
        AlphaMatte matte;
        bool converged = true;
    };
    auto solve_round = [&](const Trimap& current) {
        const DataTermField field = compute_data_term(image, current, config.sampling);
        const TerminalWeights weights = data_weights(field, current, config.sampling.gamma_scale);
        const CombinedSystem system = assemble(config.lambda, weights, laplacian);
        const PartitionedSystem part = partition(system, current);
        CgResult cg = solve_cg_detailed(part, config.cg);
        return Round{compose_matte(cg.x, current, part.unknown_to_pixel), cg.converged};
    };

    Trimap current = trimap;
    int unknown = current.count(Label::Unknown);
    Round round = solve_round(current);
    result.trace.push_back({0, unknown, unknown, 0, 0, round.converged, record_mse(round.matte)});

    for (int iter = 1; iter <= config.refine.n_iters; ++iter) {
        const int unknown_before = unknown;
        if (unknown_before == 0) break;
        const RefineOutcome refined = refine_trimap(current, round.matte, config.refine);
        if (refined.promoted() == 0) break;
        current = refined.trimap;
        unknown = unknown_before - refined.promoted();

        if (unknown == 0)
            round = Round{matte_from_labels(current), true};
        else
            round = solve_round(current);
        result.trace.push_back({iter, unknown_before, unknown, refined.promoted_fg,
                                refined.promoted_bg, round.converged, record_mse(round.matte)});
        if (unknown == 0) break;
    }

    result.matte = std::move(round.matte);
    return result;
}

void write_trace_csv(const std::string& path, const RefinementTrace& trace) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) fail(Errc::io_error, "cannot open " + path + " for writing");
    std::fputs("iteration,unknown_before,unknown_after,promoted_fg,promoted_bg,cg_converged,mse\n",
               fp);
    for (const TraceRow& row : trace) {
        char mse_buf[40] = "";
        if (!std::isnan(row.mse)) std::snprintf(mse_buf, sizeof(mse_buf), "%.17g", row.mse);
        std::fprintf(fp, "%d,%d,%d,%d,%d,%d,%s\n", row.iteration, row.unknown_before,
                     row.unknown_after, row.promoted_fg, row.promoted_bg,
                     row.cg_converged ? 1 : 0, mse_buf);
    }
    if (std::fclose(fp) != 0) fail(Errc::io_error, "failed to finish writing " + path);
}

}  // namespace nwm

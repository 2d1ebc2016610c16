#pragma once

#include <string>
#include <vector>

#include "nwm/dataterm.hpp"
#include "nwm/image.hpp"
#include "nwm/metrics.hpp"
#include "nwm/smoothterm.hpp"
#include "nwm/solver.hpp"

namespace nwm {

struct RefinementParams {
    double t_alpha = 0.95;   // confidence threshold, must lie in (0.5, 1)
    double t_percent = 0.10; // proportion of the unknown set considered per round
    int n_iters = 4;
};

enum class Promotion { None, ToForeground, ToBackground };

struct RefineOutcome {
    Trimap trimap;
    int promoted_fg = 0;
    int promoted_bg = 0;
    int promoted() const { return promoted_fg + promoted_bg; }
};

// One row per matting round. Row 0 is the initial solve (no promotions);
// rows k >= 1 describe the k-th refinement round. mse is NaN when no ground
// truth was supplied.
struct TraceRow {
    int iteration = 0;
    int unknown_before = 0;
    int unknown_after = 0;
    int promoted_fg = 0;
    int promoted_bg = 0;
    bool cg_converged = true;
    double mse = 0.0;
};

using RefinementTrace = std::vector<TraceRow>;

struct PipelineConfig {
    double lambda = 0.001;
    SamplingParams sampling;
    double lap_eps = kDefaultLaplacianEps;
    CgParams cg;
    RefinementParams refine;
    MseRegion mse_region = MseRegion::UnknownOnly;  // trace MSE region
};

struct PipelineResult {
    AlphaMatte matte;
    RefinementTrace trace;
};

/// True iff x is unknown and at least one of its 4-neighbors carries a known
/// label.
bool space_constraint(const Trimap& trimap, int pixel);

/// alpha > t_alpha promotes to foreground, alpha < 1 - t_alpha to background.
/// The two-sided rule mirrors the promotion of near-zero alphas to background.
Promotion confidence_constraint(double alpha, double t_alpha);

/// The most decided unknown pixels: top max(1, floor(t_percent * |U|)) by
/// |0.5 - alpha| descending, ties broken by ascending pixel index. Returned
/// sorted by pixel index.
std::vector<int> proportion_select(const Trimap& trimap, const AlphaMatte& matte,
                                   double t_percent);

/// Promotes every unknown pixel that passes all three constraints at once
/// (space, confidence, proportion, all evaluated against the input trimap).
/// Known labels are never changed. Zero promotions is a valid outcome.
RefineOutcome refine_trimap(const Trimap& trimap, const AlphaMatte& matte,
                            const RefinementParams& params);

/// Full matting pipeline: solve once, then run up to n_iters rounds of
/// {refine trimap, re-solve}. The matting Laplacian is computed once (it
/// depends only on the image); the data term and the partition are rebuilt
/// every round. Stops early when a round promotes nothing or no unknown
/// pixels remain. A non-converged solve is recorded in the trace, not fatal.
PipelineResult run_pipeline(const Image& image, const Trimap& trimap,
                            const PipelineConfig& config,
                            const AlphaMatte* ground_truth = nullptr);

/// Trace CSV, one row per round:
/// iteration,unknown_before,unknown_after,promoted_fg,promoted_bg,cg_converged,mse
void write_trace_csv(const std::string& path, const RefinementTrace& trace);

}  // namespace nwm

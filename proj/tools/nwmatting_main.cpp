// nwmatting: trimap-based alpha matting with a normalized blend between a
// color-sampling data term and a matting-Laplacian smooth term, plus
// self-labeling trimap refinement rounds and an evaluation harness.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "nwm/errors.hpp"
#include "nwm/eval.hpp"
#include "nwm/imageio.hpp"
#include "nwm/kernels.hpp"
#include "nwm/ssl.hpp"
#include "nwm/synthetic.hpp"
#include "nwm/version.hpp"

namespace {

struct CommonOptions {
    nwm::PipelineConfig config;
    std::string kernels = "auto";
    std::string mse_region = "unknown";
};

void add_pipeline_flags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--lambda", opts.config.lambda,
                    "Blend weight between data and smooth term, in [0, 1]")
        ->capture_default_str();
    cmd->add_option("--samples", opts.config.sampling.n_samples,
                    "Boundary samples gathered per known class")
        ->capture_default_str();
    cmd->add_option("--top-pairs", opts.config.sampling.top_pairs,
                    "Highest-confidence sample pairs kept per pixel")
        ->capture_default_str();
    cmd->add_option("--sigma", opts.config.sampling.sigma, "Pair-confidence bandwidth")
        ->capture_default_str();
    cmd->add_option("--lap-eps", opts.config.lap_eps,
                    "Window covariance regularizer of the smooth term")
        ->capture_default_str();
    cmd->add_option("--cg-tol", opts.config.cg.tol,
                    "Conjugate gradient relative residual tolerance")
        ->capture_default_str();
    cmd->add_option("--cg-max-iter", opts.config.cg.max_iter,
                    "Conjugate gradient iteration cap")
        ->capture_default_str();
    cmd->add_option("--t-alpha", opts.config.refine.t_alpha,
                    "Promotion confidence threshold, in (0.5, 1)")
        ->capture_default_str();
    cmd->add_option("--t-percent", opts.config.refine.t_percent,
                    "Fraction of the unknown set considered per refinement round")
        ->capture_default_str();
    cmd->add_option("--mse-region", opts.mse_region, "MSE region: unknown|whole")
        ->check(CLI::IsMember({"unknown", "whole"}))
        ->capture_default_str();
    cmd->add_option("--kernels", opts.kernels, "Arithmetic backend: auto|scalar|avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
        ->capture_default_str();
}

void apply_common(CommonOptions& opts) {
    if (opts.kernels != "auto")
        nwm::kernels::set_backend(opts.kernels == "scalar" ? nwm::kernels::Backend::scalar
                                                           : nwm::kernels::Backend::avx2);
    opts.config.mse_region = opts.mse_region == "unknown" ? nwm::MseRegion::UnknownOnly
                                                          : nwm::MseRegion::WholeImage;
}

std::string default_trace_path(const std::string& out_path) {
    std::filesystem::path p(out_path);
    p.replace_extension(".trace.csv");
    return p.string();
}

nwm::CoarseLevel parse_level(int level) {
    if (level != 1 && level != 2)
        nwm::fail(nwm::Errc::invalid_argument, "--level must be 1 or 2");
    return level == 1 ? nwm::CoarseLevel::Level1 : nwm::CoarseLevel::Level2;
}

int run_matte(CommonOptions& opts, const std::string& image_path,
              const std::string& trimap_path, const std::string& out_path, int iters,
              const std::string& gt_path, std::string trace_path) {
    apply_common(opts);
    opts.config.refine.n_iters = iters;

    const nwm::Image image = nwm::load_image(image_path);
    const nwm::Trimap trimap = nwm::load_trimap(trimap_path);
    nwm::AlphaMatte truth;
    const bool have_truth = !gt_path.empty();
    if (have_truth) truth = nwm::load_alpha(gt_path);

    const nwm::PipelineResult result =
        nwm::run_pipeline(image, trimap, opts.config, have_truth ? &truth : nullptr);
    nwm::save_alpha(out_path, result.matte);
    if (iters > 0) {
        if (trace_path.empty()) trace_path = default_trace_path(out_path);
        nwm::write_trace_csv(trace_path, result.trace);
        std::printf("wrote %s and %s\n", out_path.c_str(), trace_path.c_str());
    } else {
        std::printf("wrote %s\n", out_path.c_str());
    }
    return 0;
}

int run_sweep(CommonOptions& opts, const std::string& data_root, int level,
              std::vector<double> lambdas, const std::string& out_path) {
    apply_common(opts);
    const nwm::CoarseLevel coarse = parse_level(level);
    const std::vector<nwm::BenchmarkEntry> entries = nwm::ingest_benchmark(data_root);

    std::vector<nwm::EvalRecord> records;
    for (const nwm::BenchmarkEntry& entry : entries) {
        const std::vector<nwm::EvalRecord> rows =
            nwm::lambda_sweep(entry, lambdas, coarse, opts.config);
        records.insert(records.end(), rows.begin(), rows.end());
        std::printf("swept %s over %zu lambdas\n", entry.id.c_str(), lambdas.size());
    }
    nwm::write_results_csv(out_path, records);
    std::printf("wrote %s (%zu rows)\n", out_path.c_str(), records.size());
    return 0;
}

int run_eval(CommonOptions& opts, const std::string& data_root, int level, double lambda,
             int iters, const std::string& out_path) {
    apply_common(opts);
    const nwm::CoarseLevel coarse = parse_level(level);
    const std::vector<nwm::BenchmarkEntry> entries = nwm::ingest_benchmark(data_root);

    std::vector<nwm::EvalRecord> records;
    for (const nwm::BenchmarkEntry& entry : entries) {
        const std::vector<nwm::CurvePoint> curve =
            nwm::iteration_curve(entry, lambda, iters, opts.config, coarse);
        for (const nwm::CurvePoint& point : curve)
            records.push_back({entry.id, lambda, point.iteration, opts.config.mse_region,
                               point.mse, point.iteration == 0
                                              ? std::optional<double>{}
                                              : std::optional<double>{point.pimp}});
        std::printf("evaluated %s through %d rounds\n", entry.id.c_str(), iters);
    }
    nwm::write_results_csv(out_path, records);
    std::printf("wrote %s (%zu rows)\n", out_path.c_str(), records.size());
    return 0;
}

int run_synth(const std::string& out_root, int count, int size, double noise, int band) {
    const std::vector<nwm::SyntheticSpec> specs =
        nwm::default_suite(count, size, noise, band);
    nwm::write_benchmark_layout(out_root, specs);
    std::printf("wrote %d synthetic cases under %s\n", count, out_root.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Alpha matting with a normalized data/smooth blend and "
                 "self-labeling trimap refinement"};
    app.set_version_flag("--version", std::string("nwmatting ") + NWM_VERSION);
    app.require_subcommand(1);

    CommonOptions matte_opts, sweep_opts, eval_opts;

    // matte
    auto* matte = app.add_subcommand("matte", "Compute an alpha matte for one image");
    std::string image_path, trimap_path, out_path = "alpha.png", gt_path, trace_path;
    int matte_iters = 4;
    matte->add_option("-i,--image", image_path, "Input image (8-bit PNG)")->required();
    matte->add_option("-t,--trimap", trimap_path, "Trimap PNG (white/black/gray)")->required();
    matte->add_option("-o,--out", out_path, "Output alpha PNG")->capture_default_str();
    matte->add_option("--iters", matte_iters, "Refinement rounds (0 = plain matting)")
        ->capture_default_str();
    matte->add_option("--gt", gt_path, "Optional ground-truth matte for trace MSE");
    matte->add_option("--trace", trace_path,
                      "Trace CSV path (default: output path with .trace.csv)");
    add_pipeline_flags(matte, matte_opts);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "MSE over a lambda grid (no refinement)");
    std::string sweep_root, sweep_out = "results.csv";
    int sweep_level = 2;
    std::vector<double> lambdas = {1e-4, 1e-3, 1e-2, 5e-2, 0.1, 0.5, 1.0};
    sweep->add_option("--data", sweep_root, "Dataset root (input/, trimap1/, trimap2/, gt/)")
        ->required();
    sweep->add_option("--level", sweep_level, "Trimap coarse level: 1|2")->capture_default_str();
    sweep->add_option("--lambdas", lambdas, "Comma-separated lambda values")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--out", sweep_out, "Results CSV path")->capture_default_str();
    add_pipeline_flags(sweep, sweep_opts);

    // eval
    auto* eval = app.add_subcommand("eval", "Per-round MSE and PIMP against ground truth");
    std::string eval_root, eval_out = "results.csv";
    int eval_level = 2, eval_iters = 4;
    double eval_lambda = 0.001;
    eval->add_option("--data", eval_root, "Dataset root (input/, trimap1/, trimap2/, gt/)")
        ->required();
    eval->add_option("--level", eval_level, "Trimap coarse level: 1|2")->capture_default_str();
    eval->add_option("--lambda", eval_lambda, "Blend weight")->capture_default_str();
    eval->add_option("--iters", eval_iters, "Refinement rounds")->capture_default_str();
    eval->add_option("--out", eval_out, "Results CSV path")->capture_default_str();
    add_pipeline_flags(eval, eval_opts);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic benchmark dataset");
    std::string synth_out;
    int synth_count = 8, synth_size = 64, synth_band = 6;
    double synth_noise = 0.04;
    synth->add_option("--out", synth_out, "Dataset root to create")->required();
    synth->add_option("--count", synth_count, "Number of cases")->capture_default_str();
    synth->add_option("--size", synth_size, "Square image size in pixels")->capture_default_str();
    synth->add_option("--noise", synth_noise, "Gaussian color noise sigma")->capture_default_str();
    synth->add_option("--band", synth_band, "Unknown band width in pixels (level 1)")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (matte->parsed())
            return run_matte(matte_opts, image_path, trimap_path, out_path, matte_iters,
                             gt_path, trace_path);
        if (sweep->parsed())
            return run_sweep(sweep_opts, sweep_root, sweep_level, lambdas, sweep_out);
        if (eval->parsed())
            return run_eval(eval_opts, eval_root, eval_level, eval_lambda, eval_iters, eval_out);
        if (synth->parsed())
            return run_synth(synth_out, synth_count, synth_size, synth_noise, synth_band);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

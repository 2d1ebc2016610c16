#include "nwm/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "nwm/errors.hpp"
#include "nwm/imageio.hpp"

namespace fs = std::filesystem;

namespace nwm {

namespace {

std::optional<std::string> existing(const fs::path& path) {
    std::error_code ec;
    if (fs::is_regular_file(path, ec)) return path.string();
    return std::nullopt;
}

struct LoadedEntry {
    Image image;
    Trimap trimap;
    AlphaMatte truth;
};

LoadedEntry load_entry(const BenchmarkEntry& entry, CoarseLevel level, bool need_truth) {
    const std::optional<std::string>& trimap_path = entry.trimap_path(level);
    if (!trimap_path)
        fail(Errc::missing_trimap,
             entry.id + " has no coarse-level-" +
                 std::to_string(static_cast<int>(level)) + " trimap");
    if (need_truth && !entry.ground_truth_path)
        fail(Errc::missing_ground_truth, entry.id + " has no ground-truth matte");

    LoadedEntry loaded;
    loaded.image = load_image(entry.image_path);
    loaded.trimap = load_trimap(*trimap_path);
    if (need_truth) loaded.truth = load_alpha(*entry.ground_truth_path);
    return loaded;
}

void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

std::vector<BenchmarkEntry> ingest_benchmark(const std::string& root,
                                             std::vector<std::string>* warnings) {
    const fs::path input_dir = fs::path(root) / "input";
    std::error_code ec;
    if (!fs::is_directory(input_dir, ec))
        fail(Errc::empty_dataset, root + " has no input/ directory");

    std::vector<std::string> stems;
    for (const auto& dir_entry : fs::directory_iterator(input_dir)) {
        if (!dir_entry.is_regular_file()) continue;
        if (dir_entry.path().extension() != ".png") continue;
        stems.push_back(dir_entry.path().stem().string());
    }
    std::sort(stems.begin(), stems.end());

    std::vector<BenchmarkEntry> entries;
    for (const std::string& stem : stems) {
        BenchmarkEntry entry;
        entry.id = stem;
        entry.image_path = (input_dir / (stem + ".png")).string();
        entry.trimap1_path = existing(fs::path(root) / "trimap1" / (stem + ".png"));
        entry.trimap2_path = existing(fs::path(root) / "trimap2" / (stem + ".png"));
        entry.ground_truth_path = existing(fs::path(root) / "gt" / (stem + ".png"));
        if (!entry.trimap1_path && !entry.trimap2_path) {
            const std::string warning = stem + ": no trimap found, skipped";
            if (warnings)
                warnings->push_back(warning);
            else
                std::fprintf(stderr, "warning: %s\n", warning.c_str());
            continue;
        }
        entries.push_back(std::move(entry));
    }
    if (entries.empty()) fail(Errc::empty_dataset, root + " contains no usable entries");
    return entries;
}

std::vector<EvalRecord> lambda_sweep(const BenchmarkEntry& entry,
                                     const std::vector<double>& lambdas, CoarseLevel level,
                                     const PipelineConfig& base) {
    if (lambdas.empty()) return {};
    const LoadedEntry loaded = load_entry(entry, level, /*need_truth=*/true);

    std::vector<EvalRecord> records;
    records.reserve(lambdas.size());
    for (double lambda : lambdas) {
        PipelineConfig config = base;
        config.lambda = lambda;
        config.refine.n_iters = 0;
        const PipelineResult result =
            run_pipeline(loaded.image, loaded.trimap, config, &loaded.truth);
        records.push_back({entry.id, lambda, 0, config.mse_region,
                           mse(result.matte, loaded.truth, config.mse_region, loaded.trimap),
                           std::nullopt});
    }
    return records;
}

std::vector<CurvePoint> iteration_curve(const BenchmarkEntry& entry, double lambda,
                                        int max_iters, const PipelineConfig& base,
                                        CoarseLevel level) {
    if (max_iters < 0) fail(Errc::invalid_argument, "max_iters must be >= 0");
    const LoadedEntry loaded = load_entry(entry, level, /*need_truth=*/true);

    PipelineConfig config = base;
    config.lambda = lambda;
    config.refine.n_iters = max_iters;
    const PipelineResult result =
        run_pipeline(loaded.image, loaded.trimap, config, &loaded.truth);

    // Early-stopped pipelines leave the matte unchanged from the last
    // executed round, so its MSE carries forward to the remaining rows.
    std::vector<CurvePoint> curve;
    curve.reserve(static_cast<std::size_t>(max_iters) + 1);
    const double baseline = result.trace.front().mse;
    double last_mse = baseline;
    for (int k = 0; k <= max_iters; ++k) {
        if (k < static_cast<int>(result.trace.size())) last_mse = result.trace[static_cast<std::size_t>(k)].mse;
        curve.push_back({k, last_mse, k == 0 ? 0.0 : pimp(last_mse, baseline)});
    }
    return curve;
}

void write_results_csv(const std::string& path, const std::vector<EvalRecord>& records) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) fail(Errc::io_error, "cannot open " + path + " for writing");
    std::fputs("image,lambda,iters,region,mse,pimp\n", fp);
    for (const EvalRecord& record : records) {
        std::string line = record.image_id;
        line += ',';
        append_double(line, record.lambda);
        line += ',';
        line += std::to_string(record.iterations);
        line += ',';
        line += region_name(record.region);
        line += ',';
        append_double(line, record.mse);
        line += ',';
        if (record.pimp) append_double(line, *record.pimp);
        line += '\n';
        std::fputs(line.c_str(), fp);
    }
    if (std::fclose(fp) != 0) fail(Errc::io_error, "failed to finish writing " + path);
}

}  // namespace nwm

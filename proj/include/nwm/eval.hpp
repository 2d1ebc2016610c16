#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nwm/metrics.hpp"
#include "nwm/ssl.hpp"

namespace nwm {

enum class CoarseLevel { Level1 = 1, Level2 = 2 };

// One benchmark image: input plus per-coarse-level trimaps and an optional
// ground-truth matte, matched by filename stem.
struct BenchmarkEntry {
    std::string id;
    std::string image_path;
    std::optional<std::string> trimap1_path;
    std::optional<std::string> trimap2_path;
    std::optional<std::string> ground_truth_path;

    const std::optional<std::string>& trimap_path(CoarseLevel level) const {
        return level == CoarseLevel::Level1 ? trimap1_path : trimap2_path;
    }
};

struct EvalRecord {
    std::string image_id;
    double lambda = 0.0;
    int iterations = 0;
    MseRegion region = MseRegion::UnknownOnly;
    double mse = 0.0;
    std::optional<double> pimp;  // absent when there is no SSL baseline
};

struct CurvePoint {
    int iteration = 0;
    double mse = 0.0;
    double pimp = 0.0;
};

/// Scans root/input/*.png and matches root/trimap1, root/trimap2 and root/gt
/// by stem. Entries with no trimap at all are skipped with a warning
/// (appended to `warnings` when given, otherwise printed to stderr). Throws
/// EmptyDataset when nothing usable is found.
std::vector<BenchmarkEntry> ingest_benchmark(const std::string& root,
                                             std::vector<std::string>* warnings = nullptr);

/// One record per lambda, in input order, matting with no SSL rounds.
/// Requires ground truth and the requested trimap level.
std::vector<EvalRecord> lambda_sweep(const BenchmarkEntry& entry,
                                     const std::vector<double>& lambdas, CoarseLevel level,
                                     const PipelineConfig& base);

/// MSE and PIMP after k = 0..max_iters SSL rounds; PIMP at round k uses the
/// round-0 MSE as its baseline (and is 0 by definition at k = 0). When the
/// pipeline stops early the final matte carries forward.
std::vector<CurvePoint> iteration_curve(const BenchmarkEntry& entry, double lambda,
                                        int max_iters, const PipelineConfig& base,
                                        CoarseLevel level);

/// results CSV with header image,lambda,iters,region,mse,pimp; the pimp cell
/// is empty when not applicable.
void write_results_csv(const std::string& path, const std::vector<EvalRecord>& records);

}  // namespace nwm

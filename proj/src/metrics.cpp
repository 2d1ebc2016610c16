#include "nwm/metrics.hpp"

#include "nwm/errors.hpp"
#include "nwm/kernels.hpp"

namespace nwm {

const char* region_name(MseRegion region) {
    return region == MseRegion::UnknownOnly ? "unknown" : "whole";
}

double mse(const AlphaMatte& matte, const AlphaMatte& truth, MseRegion region,
           const Trimap& trimap) {
    if (!same_dims(matte.width, matte.height, truth.width, truth.height) ||
        !same_dims(matte.width, matte.height, trimap.width, trimap.height))
        fail(Errc::dimension_mismatch, "matte, truth and trimap dimensions differ");

    if (region == MseRegion::WholeImage) {
        const std::size_t n = matte.alpha.size();
        if (n == 0) fail(Errc::empty_region, "empty image");
        return kernels::sum_sq_diff(matte.alpha.data(), truth.alpha.data(), n) /
               static_cast<double>(n);
    }

    double acc = 0.0;
    int count = 0;
    for (int i = 0; i < trimap.pixel_count(); ++i) {
        if (trimap.at(i) != Label::Unknown) continue;
        const double d = matte.at(i) - truth.at(i);
        acc += d * d;
        ++count;
    }
    if (count == 0) fail(Errc::empty_region, "trimap has no unknown pixels to average over");
    return acc / count;
}

double pimp(double mse_with_ssl, double mse_without_ssl) {
    if (!(mse_without_ssl > 0.0))
        fail(Errc::zero_baseline, "baseline MSE must be > 0");
    const double v = 1.0 - mse_with_ssl / mse_without_ssl;
    return v > 0.0 ? v : 0.0;
}

}  // namespace nwm

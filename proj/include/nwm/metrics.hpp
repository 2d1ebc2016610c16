#pragma once

#include "nwm/image.hpp"

namespace nwm {

enum class MseRegion { UnknownOnly, WholeImage };

const char* region_name(MseRegion region);

/// Mean squared error between two mattes over the selected region.
/// UnknownOnly averages over the trimap's unknown pixels (pass the original
/// trimap, not a refined one, when evaluating SSL output). Throws
/// DimensionMismatch / EmptyRegion.
double mse(const AlphaMatte& matte, const AlphaMatte& truth, MseRegion region,
           const Trimap& trimap);

/// Percentage increase of matting performance:
/// max(0, 1 - mse_with_ssl / mse_without_ssl). Throws ZeroBaseline when the
/// baseline MSE is zero.
double pimp(double mse_with_ssl, double mse_without_ssl);

}  // namespace nwm

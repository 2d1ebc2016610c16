#pragma once

#include "nwm/image.hpp"
#include "nwm/sparse.hpp"

namespace nwm {

// Covariance regularizer for near-singular window statistics; standard scale
// for channels in [0, 1].
inline constexpr double kDefaultLaplacianEps = 1e-5;

/// Matting Laplacian over all full 3x3 windows of the image:
///
///   L[i][j] = sum over windows w containing both i and j of
///             delta_ij - (1 + (I_i - mu)^T (Sigma + eps/9 I3)^-1 (I_j - mu)) / 9
///
/// with mu / Sigma the window color mean and covariance. The result is
/// symmetric positive semidefinite with zero row sums; entries vanish for
/// pixel pairs further than Chebyshev distance 2 apart. Border pixels
/// participate through the interior windows that contain them; no padding is
/// invented. Throws ImageTooSmall below 3x3.
SparseSymMatrix matting_laplacian(const Image& image, double eps);

}  // namespace nwm

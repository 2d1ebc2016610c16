#pragma once

#include <vector>

#include "nwm/dataterm.hpp"
#include "nwm/image.hpp"
#include "nwm/sparse.hpp"

namespace nwm {

struct CgParams {
    double tol = 1e-7;    // relative residual |L_u q_u - b| / |b|
    int max_iter = 2000;
};

// Blended system over all image pixels. The two virtual terminals are
// eliminated analytically: each pixel i carries an extra diagonal term
// lambda * (W_iF + W_iB) and a right-hand-side contribution lambda * W_iF,
// which is algebraically the full graph with the terminals pinned to 1 and 0.
struct CombinedSystem {
    SparseSymMatrix laplacian;         // lambda-blended, terminal diagonal folded in
    std::vector<double> terminal_rhs;  // lambda * W_iF per pixel
    double lambda = 0.0;
};

// Known/unknown split of a CombinedSystem. Unknown and known orders are
// ascending pixel index.
struct PartitionedSystem {
    SparseSymMatrix unknown_block;       // L_u
    CsrMatrix coupling;                  // rows unknown order, cols known order
    std::vector<double> known_alpha;     // q_k: 1 foreground, 0 background
    std::vector<double> terminal_rhs;    // per unknown pixel
    std::vector<int> unknown_to_pixel;   // index map, unknown order -> pixel
    std::vector<int> known_to_pixel;
    std::vector<int> pixel_to_unknown;   // -1 for known pixels

    int unknown_count() const { return static_cast<int>(unknown_to_pixel.size()); }

    // b = terminal_rhs - coupling * q_k
    std::vector<double> rhs() const;
};

struct CgResult {
    std::vector<double> x;
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// L = lambda * W + (1 - lambda) * L_lap with W the Laplacian of the
/// terminal-edge graph (diagonal after elimination). Throws BadLambda outside
/// [0, 1].
CombinedSystem assemble(double lambda, const TerminalWeights& weights,
                        const SparseSymMatrix& laplacian);

/// Splits rows/columns by trimap label. Throws NoUnknownPixels when there is
/// nothing to solve (callers should return the trimap as the matte).
PartitionedSystem partition(const CombinedSystem& system, const Trimap& trimap);

/// Jacobi-preconditioned conjugate gradient on L_u q_u = b. Returns the final
/// iterate together with convergence information; b = 0 yields q_u = 0.
CgResult solve_cg_detailed(const PartitionedSystem& part, const CgParams& params);

/// As solve_cg_detailed but throws NotConverged (reporting the final relative
/// residual) when the tolerance is not reached within max_iter.
std::vector<double> solve_cg(const PartitionedSystem& part, const CgParams& params);

/// Scatters q_u back onto the image: foreground pixels 1, background 0,
/// unknown pixels clamp(q_u, 0, 1).
AlphaMatte compose_matte(const std::vector<double>& unknown_alpha, const Trimap& trimap,
                         const std::vector<int>& unknown_to_pixel);

}  // namespace nwm

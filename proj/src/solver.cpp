#include "nwm/solver.hpp"

#include <algorithm>
#include <cmath>

#include "nwm/errors.hpp"
#include "nwm/kernels.hpp"

namespace nwm {

std::vector<double> PartitionedSystem::rhs() const {
    std::vector<double> b = terminal_rhs;
    if (!known_alpha.empty()) {
        std::vector<double> coupled(b.size());
        coupling.matvec(known_alpha.data(), coupled.data());
        for (std::size_t i = 0; i < b.size(); ++i) b[i] -= coupled[i];
    }
    return b;
}

CombinedSystem assemble(double lambda, const TerminalWeights& weights,
                        const SparseSymMatrix& laplacian) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        fail(Errc::bad_lambda, "lambda must lie in [0, 1]");
    const int n = laplacian.n();
    if (static_cast<int>(weights.to_fg.size()) != n ||
        static_cast<int>(weights.to_bg.size()) != n)
        fail(Errc::dimension_mismatch, "terminal weight length != Laplacian dimension");

    const double smooth_scale = 1.0 - lambda;
    std::vector<Triplet> triplets = laplacian.upper_triplets();
    for (Triplet& t : triplets) t.value *= smooth_scale;
    for (int i = 0; i < n; ++i)
        triplets.push_back({i, i, lambda * (weights.to_fg[static_cast<std::size_t>(i)] +
                                            weights.to_bg[static_cast<std::size_t>(i)])});

    CombinedSystem system;
    system.lambda = lambda;
    system.laplacian = SparseSymMatrix::from_upper_triplets(n, std::move(triplets));
    system.terminal_rhs.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        system.terminal_rhs[static_cast<std::size_t>(i)] =
            lambda * weights.to_fg[static_cast<std::size_t>(i)];
    return system;
}

PartitionedSystem partition(const CombinedSystem& system, const Trimap& trimap) {
    const int n = system.laplacian.n();
    if (n != trimap.pixel_count())
        fail(Errc::dimension_mismatch, "system dimension != trimap pixel count");

    PartitionedSystem part;
    part.pixel_to_unknown.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> pixel_to_known(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (trimap.at(i) == Label::Unknown) {
            part.pixel_to_unknown[static_cast<std::size_t>(i)] =
                static_cast<int>(part.unknown_to_pixel.size());
            part.unknown_to_pixel.push_back(i);
        } else {
            pixel_to_known[static_cast<std::size_t>(i)] =
                static_cast<int>(part.known_to_pixel.size());
            part.known_to_pixel.push_back(i);
        }
    }
    if (part.unknown_to_pixel.empty())
        fail(Errc::no_unknown_pixels, "trimap has no unknown pixels to solve for");

    const int n_unknown = part.unknown_count();
    const int n_known = static_cast<int>(part.known_to_pixel.size());

    part.known_alpha.resize(static_cast<std::size_t>(n_known));
    for (int k = 0; k < n_known; ++k)
        part.known_alpha[static_cast<std::size_t>(k)] =
            trimap.at(part.known_to_pixel[static_cast<std::size_t>(k)]) == Label::Foreground
                ? 1.0
                : 0.0;

    part.terminal_rhs.resize(static_cast<std::size_t>(n_unknown));
    for (int u = 0; u < n_unknown; ++u)
        part.terminal_rhs[static_cast<std::size_t>(u)] =
            system.terminal_rhs[static_cast<std::size_t>(
                part.unknown_to_pixel[static_cast<std::size_t>(u)])];

    // Walk unknown rows of the full CSR once; each row splits into the L_u
    // upper triangle and the coupling row. Source columns are ascending, so
    // both outputs stay sorted.
    const CsrMatrix& full = system.laplacian.csr();
    std::vector<Triplet> lu_triplets;
    part.coupling.rows = n_unknown;
    part.coupling.cols = n_known;
    part.coupling.row_ptr.assign(static_cast<std::size_t>(n_unknown) + 1, 0);

    for (int u = 0; u < n_unknown; ++u) {
        const int i = part.unknown_to_pixel[static_cast<std::size_t>(u)];
        for (int k = full.row_ptr[static_cast<std::size_t>(i)];
             k < full.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            const int j = full.col_idx[static_cast<std::size_t>(k)];
            const double v = full.values[static_cast<std::size_t>(k)];
            if (trimap.at(j) == Label::Unknown) {
                if (j >= i)
                    lu_triplets.push_back({u, part.pixel_to_unknown[static_cast<std::size_t>(j)], v});
            } else {
                part.coupling.col_idx.push_back(pixel_to_known[static_cast<std::size_t>(j)]);
                part.coupling.values.push_back(v);
            }
        }
        part.coupling.row_ptr[static_cast<std::size_t>(u) + 1] =
            static_cast<int>(part.coupling.col_idx.size());
    }
    part.unknown_block = SparseSymMatrix::from_upper_triplets(n_unknown, std::move(lu_triplets));
    return part;
}

CgResult solve_cg_detailed(const PartitionedSystem& part, const CgParams& params) {
    if (!(params.tol > 0.0)) fail(Errc::invalid_argument, "cg tolerance must be > 0");
    if (params.max_iter < 0) fail(Errc::invalid_argument, "cg max_iter must be >= 0");

    const int n = part.unknown_count();
    const std::vector<double> b = part.rhs();

    CgResult result;
    result.x.assign(static_cast<std::size_t>(n), 0.0);

    const double b_norm = std::sqrt(kernels::dot(b.data(), b.data(), b.size()));
    if (b_norm == 0.0) {
        result.converged = true;
        return result;
    }

    std::vector<double> inv_diag = part.unknown_block.diagonal();
    for (double& d : inv_diag) d = d > 0.0 ? 1.0 / d : 1.0;

    std::vector<double> r = b;  // x0 = 0
    std::vector<double> z(static_cast<std::size_t>(n));
    std::vector<double> p(static_cast<std::size_t>(n));
    std::vector<double> ap(static_cast<std::size_t>(n));

    kernels::hadamard(inv_diag.data(), r.data(), z.data(), z.size());
    p = z;
    double rz = kernels::dot(r.data(), z.data(), r.size());
    double residual = b_norm;

    for (int it = 1; it <= params.max_iter; ++it) {
        part.unknown_block.matvec(p.data(), ap.data());
        const double p_ap = kernels::dot(p.data(), ap.data(), p.size());
        if (p_ap <= 0.0) break;  // loss of positive definiteness; give up
        const double alpha = rz / p_ap;
        kernels::axpy(alpha, p.data(), result.x.data(), p.size());
        kernels::axpy(-alpha, ap.data(), r.data(), r.size());
        residual = std::sqrt(kernels::dot(r.data(), r.data(), r.size()));
        result.iterations = it;
        if (residual <= params.tol * b_norm) {
            result.converged = true;
            break;
        }
        kernels::hadamard(inv_diag.data(), r.data(), z.data(), z.size());
        const double rz_next = kernels::dot(r.data(), z.data(), r.size());
        kernels::xpby(z.data(), rz_next / rz, p.data(), p.size());
        rz = rz_next;
    }
    result.relative_residual = residual / b_norm;
    return result;
}

std::vector<double> solve_cg(const PartitionedSystem& part, const CgParams& params) {
    CgResult result = solve_cg_detailed(part, params);
    if (!result.converged)
        fail(Errc::not_converged,
             "conjugate gradient stopped after " + std::to_string(result.iterations) +
                 " iterations with relative residual " + std::to_string(result.relative_residual));
    return std::move(result.x);
}

AlphaMatte compose_matte(const std::vector<double>& unknown_alpha, const Trimap& trimap,
                         const std::vector<int>& unknown_to_pixel) {
    if (unknown_alpha.size() != unknown_to_pixel.size())
        fail(Errc::length_mismatch, "unknown alpha length != index map length");
    if (static_cast<int>(unknown_to_pixel.size()) != trimap.count(Label::Unknown))
        fail(Errc::length_mismatch, "index map length != trimap unknown count");

    AlphaMatte matte;
    matte.width = trimap.width;
    matte.height = trimap.height;
    matte.alpha.resize(static_cast<std::size_t>(trimap.pixel_count()));
    for (int i = 0; i < trimap.pixel_count(); ++i)
        matte.alpha[static_cast<std::size_t>(i)] =
            trimap.at(i) == Label::Foreground ? 1.0 : 0.0;
    for (std::size_t u = 0; u < unknown_to_pixel.size(); ++u)
        matte.alpha[static_cast<std::size_t>(unknown_to_pixel[u])] =
            std::clamp(unknown_alpha[u], 0.0, 1.0);
    return matte;
}

}  // namespace nwm

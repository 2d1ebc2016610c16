#pragma once

// Test-side oracles and fixtures. Dense linear algebra goes through Eigen so
// the checks stay independent of the library's own sparse/CG code paths.

#include <Eigen/Dense>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "nwm/image.hpp"
#include "nwm/sparse.hpp"

namespace nwm::test {

Eigen::MatrixXd to_dense(const CsrMatrix& m);
Eigen::MatrixXd to_dense(const SparseSymMatrix& m);

double min_eigenvalue(const SparseSymMatrix& m);

// Direct dense solve of A x = b (LDLT).
std::vector<double> dense_solve(const SparseSymMatrix& a, const std::vector<double>& b);

// Boundary-pixel k-nearest-neighbor reference: full scan, sort by
// (squared distance, pixel index), take k.
std::vector<int> brute_force_boundary_knn(const Trimap& trimap, Label label, int qx, int qy,
                                          int k);

Image random_image(int width, int height, std::mt19937& rng);

// Random trimap with at least one pixel of every class.
Trimap random_trimap(int width, int height, std::mt19937& rng);

// Unique writable directory, removed recursively on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

// Runs the CLI binary (NWM_CLI_PATH) with the argument string appended;
// stdout/stderr are redirected into out_file when given. Returns the exit
// code, or -1 when the process did not exit normally.
int run_cli(const std::string& args, const std::string& out_file = "");

std::vector<unsigned char> read_file_bytes(const std::string& path);

}  // namespace nwm::test

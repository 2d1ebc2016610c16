#include "support/oracles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <sys/wait.h>
#include <unistd.h>

namespace nwm::test {

Eigen::MatrixXd to_dense(const CsrMatrix& m) {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int k = m.row_ptr[static_cast<std::size_t>(r)];
             k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k)
            dense(r, m.col_idx[static_cast<std::size_t>(k)]) +=
                m.values[static_cast<std::size_t>(k)];
    return dense;
}

Eigen::MatrixXd to_dense(const SparseSymMatrix& m) { return to_dense(m.csr()); }

double min_eigenvalue(const SparseSymMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_dense(m),
                                                          Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

std::vector<double> dense_solve(const SparseSymMatrix& a, const std::vector<double>& b) {
    const Eigen::MatrixXd dense = to_dense(a);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = b[i];
    const Eigen::VectorXd x = dense.ldlt().solve(rhs);
    std::vector<double> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = x(static_cast<Eigen::Index>(i));
    return out;
}

namespace {

bool boundary_pixel(const Trimap& trimap, int x, int y, Label label) {
    if (trimap.at(x, y) != label) return false;
    auto unknown = [&](int nx, int ny) {
        if (nx < 0 || ny < 0 || nx >= trimap.width || ny >= trimap.height) return false;
        return trimap.at(nx, ny) == Label::Unknown;
    };
    return unknown(x - 1, y) || unknown(x + 1, y) || unknown(x, y - 1) || unknown(x, y + 1);
}

}  // namespace

std::vector<int> brute_force_boundary_knn(const Trimap& trimap, Label label, int qx, int qy,
                                          int k) {
    std::vector<std::pair<long long, int>> keyed;
    for (int y = 0; y < trimap.height; ++y)
        for (int x = 0; x < trimap.width; ++x)
            if (boundary_pixel(trimap, x, y, label)) {
                const long long dx = x - qx, dy = y - qy;
                keyed.emplace_back(dx * dx + dy * dy, pixel_index(x, y, trimap.width));
            }
    std::sort(keyed.begin(), keyed.end());
    if (static_cast<int>(keyed.size()) > k) keyed.resize(static_cast<std::size_t>(k));
    std::vector<int> out(keyed.size());
    for (std::size_t i = 0; i < keyed.size(); ++i) out[i] = keyed[i].second;
    return out;
}

Image random_image(int width, int height, std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Image image;
    image.width = width;
    image.height = height;
    image.data.resize(static_cast<std::size_t>(width) * height * 3);
    for (double& v : image.data) v = uni(rng);
    return image;
}

Trimap random_trimap(int width, int height, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 2);
    Trimap trimap = Trimap::filled(width, height, Label::Unknown);
    for (Label& label : trimap.labels) {
        const int r = pick(rng);
        label = r == 0 ? Label::Foreground : (r == 1 ? Label::Background : Label::Unknown);
    }
    // Pin one pixel of each class so the trimap is always valid.
    std::uniform_int_distribution<int> place(0, width * height - 1);
    trimap.labels[static_cast<std::size_t>(place(rng))] = Label::Foreground;
    int bg = place(rng);
    while (trimap.labels[static_cast<std::size_t>(bg)] == Label::Foreground) bg = place(rng);
    trimap.labels[static_cast<std::size_t>(bg)] = Label::Background;
    int un = place(rng);
    while (trimap.labels[static_cast<std::size_t>(un)] != Label::Unknown) un = place(rng);
    return trimap;
}

TempDir::TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    const std::filesystem::path base = std::filesystem::temp_directory_path();
    path_ = base / ("nwm_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

int run_cli(const std::string& args, const std::string& out_file) {
    std::string command = std::string(NWM_CLI_PATH) + " " + args;
    if (!out_file.empty())
        command += " > " + out_file + " 2>&1";
    else
        command += " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

std::vector<unsigned char> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                      std::istreambuf_iterator<char>());
}

}  // namespace nwm::test

#include "longtail/recommenders/factor_model.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "longtail/error.hpp"
#include "longtail/simd/kernels.hpp"

namespace longtail {

bool FactorModel::all_finite() const {
    for (double v : playlist_factors.data()) {
        if (!std::isfinite(v)) return false;
    }
    for (double v : track_factors.data()) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

ScoredRanking factor_score(const FactorModel& model, std::span<const double> playlist_factor,
                           std::span<const Index> candidates) {
    if (playlist_factor.size() != model.factors()) throw std::invalid_argument("factor_score: width mismatch");
    std::vector<double> scores(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i] >= model.track_factors.rows()) {
            throw std::out_of_range("candidate track " + std::to_string(candidates[i]) + " outside model");
        }
        scores[i] = simd::dot(model.track_factors.row(candidates[i]), playlist_factor);
    }
    return make_ranking(candidates, scores);
}

std::vector<double> solve_factor(SparseView ratings, const DenseMatrix& fixed, const DenseMatrix& fixed_gram,
                                 double alpha, double lambda) {
    const std::size_t f = fixed.cols();
    std::vector<double> b(f, 0.0);
    if (ratings.empty()) return b;

    // Y^T C Y + lambda I = Y^T Y + lambda I + sum_{x_t > 0} (c_t - 1) y_t y_t^T
    std::vector<double> a(fixed_gram.data().begin(), fixed_gram.data().end());
    for (std::size_t i = 0; i < f; ++i) a[i * f + i] += lambda;
    for (std::size_t k = 0; k < ratings.size(); ++k) {
        const double x = ratings.values[k];
        const double c = 1.0 + alpha * x;
        const auto y = fixed.row(ratings.indices[k]);
        if (c != 1.0) simd::syr(c - 1.0, y, a);
        simd::axpy(c, y, b);  // c * r with r = 1
    }
    cholesky_solve(a, b);
    return b;
}

namespace {

constexpr std::array<char, 4> kMagic{'L', 'T', 'R', 'C'};

template <typename T>
T swap_bytes(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    std::reverse(buf, buf + sizeof(T));
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

template <typename T>
void put(std::ostream& out, T v) {
    if constexpr (std::endian::native == std::endian::big) v = swap_bytes(v);
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.write(buf, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    char buf[sizeof(T)];
    if (!in.read(buf, sizeof(T))) throw DataError("model file truncated");
    T v;
    std::memcpy(&v, buf, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) v = swap_bytes(v);
    return v;
}

void put_matrix(std::ostream& out, const DenseMatrix& m) {
    for (double v : m.data()) put(out, std::bit_cast<std::uint64_t>(v));
}

DenseMatrix get_matrix(std::istream& in, std::uint64_t rows, std::uint64_t cols) {
    DenseMatrix m(rows, cols);
    for (double& v : m.data()) v = std::bit_cast<double>(get<std::uint64_t>(in));
    return m;
}

}  // namespace

void write_factor_model(std::ostream& out, const FactorModel& model) {
    if (model.playlist_factors.cols() != model.track_factors.cols()) {
        throw std::invalid_argument("factor model widths differ");
    }
    out.write(kMagic.data(), kMagic.size());
    put<std::uint32_t>(out, kModelFileVersion);
    put<std::uint64_t>(out, model.playlist_factors.rows());
    put<std::uint64_t>(out, model.track_factors.rows());
    put<std::uint64_t>(out, model.factors());
    put_matrix(out, model.playlist_factors);
    put_matrix(out, model.track_factors);
}

FactorModel read_factor_model(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw DataError("not an LTRC model file");
    const auto version = get<std::uint32_t>(in);
    if (version != kModelFileVersion) throw DataError("unsupported LTRC version " + std::to_string(version));
    const auto playlists = get<std::uint64_t>(in);
    const auto tracks = get<std::uint64_t>(in);
    const auto factors = get<std::uint64_t>(in);
    constexpr std::uint64_t kLimit = std::uint64_t{1} << 32;
    if (playlists >= kLimit || tracks >= kLimit || factors >= kLimit) throw DataError("implausible LTRC dimensions");
    FactorModel m;
    m.playlist_factors = get_matrix(in, playlists, factors);
    m.track_factors = get_matrix(in, tracks, factors);
    return m;
}

void save_factor_model(const std::filesystem::path& path, const FactorModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_factor_model(out, model);
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

FactorModel load_factor_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    return read_factor_model(in);
}

}  // namespace longtail

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "longtail/interaction_matrix.hpp"
#include "longtail/linalg.hpp"
#include "longtail/recommenders/ranking.hpp"

namespace longtail {

/// Latent factors: one row per playlist and one row per track, same width.
struct FactorModel {
    DenseMatrix playlist_factors;
    DenseMatrix track_factors;

    std::size_t factors() const noexcept { return track_factors.cols(); }
    bool all_finite() const;

    bool operator==(const FactorModel&) const = default;
};

/// Scores each candidate by track_factor . playlist_factor.
ScoredRanking factor_score(const FactorModel& model, std::span<const double> playlist_factor,
                           std::span<const Index> candidates);

/// Regularized least-squares factor for a playlist given fixed track
/// factors: minimizes sum_t c_t (r_t - y_t . f)^2 + lambda |f|^2 with
/// r_t = [x_t > 0] and c_t = 1 + alpha x_t. `track_gram` is Y^T Y.
/// Cost is O(nnz(ratings) f^2 + f^3). Empty ratings give the zero vector.
/// Throws NumericalError when the normal matrix is singular (lambda = 0).
std::vector<double> solve_factor(SparseView ratings, const DenseMatrix& fixed, const DenseMatrix& fixed_gram,
                                 double alpha, double lambda);

// LTRC model files: magic "LTRC", u32 version, u64 playlists, u64 tracks,
// u64 factors, then playlist and track factors as row-major little-endian
// IEEE-754 doubles.
inline constexpr std::uint32_t kModelFileVersion = 1;

void write_factor_model(std::ostream& out, const FactorModel& model);
/// Throws DataError on bad magic, unsupported version, or truncation.
FactorModel read_factor_model(std::istream& in);
void save_factor_model(const std::filesystem::path& path, const FactorModel& model);
FactorModel load_factor_model(const std::filesystem::path& path);

}  // namespace longtail

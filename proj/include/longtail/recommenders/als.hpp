#pragma once

#include <cstdint>
#include <vector>

#include "longtail/recommenders/factor_model.hpp"

namespace longtail {

/// Weighted regularized matrix factorization trained by alternating least
/// squares with confidence c = 1 + alpha * x.
struct AlsConfig {
    std::size_t factors = 64;
    double alpha = 40.0;
    double lambda = 0.01;
    std::size_t sweeps = 15;
    std::uint64_t seed = 0;
    /// Standard deviation of the Gaussian initialization.
    double init_std = 0.01;

    /// Throws DataError.
    void validate() const;
};

/// Exact playlist-factor solves for every row given fixed track factors.
void als_update_playlists(const InteractionMatrix& matrix, const DenseMatrix& track_factors,
                          DenseMatrix& playlist_factors, double alpha, double lambda);

/// Exact track-factor solves for every column given fixed playlist factors.
void als_update_tracks(const InteractionMatrix& matrix, const DenseMatrix& playlist_factors,
                       DenseMatrix& track_factors, double alpha, double lambda);

/// sum_{p,t} c (r - f_t . f_p)^2 + lambda (sum |f_p|^2 + sum |f_t|^2),
/// evaluated in O(nnz f + m f^2) through the Gram matrix.
double als_cost(const InteractionMatrix& matrix, const FactorModel& model, double alpha, double lambda);

/// Seeded initialization followed by `sweeps` rounds of
/// playlist-then-track updates. Throws DataError for an empty matrix.
FactorModel als_train(const InteractionMatrix& matrix, const AlsConfig& config);

/// Factor for an unseen playlist: one playlist solve with `query` as its row.
std::vector<double> als_fold_in(const FactorModel& model, const SparseVector& query, const AlsConfig& config);
std::vector<double> als_fold_in(const FactorModel& model, const DenseMatrix& track_gram, const SparseVector& query,
                                const AlsConfig& config);

inline ScoredRanking als_score(const FactorModel& model, std::span<const double> folded,
                               std::span<const Index> candidates) {
    return factor_score(model, folded, candidates);
}

}  // namespace longtail

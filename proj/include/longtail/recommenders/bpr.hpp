#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "longtail/recommenders/factor_model.hpp"

namespace longtail {

/// Matrix factorization trained by stochastic gradient ascent on the
/// pairwise criterion sum ln sigma(x_pt - x_pt') - lambda |Theta|^2.
struct BprConfig {
    std::size_t factors = 64;
    double learning_rate = 0.05;
    double lambda = 0.01;
    std::size_t epochs = 100;
    /// 0 means one sample per stored interaction.
    std::size_t samples_per_epoch = 0;
    std::uint64_t seed = 0;
    double init_std = 0.1;

    void validate() const;
};

struct BprTriple {
    Index playlist;
    Index positive;
    Index negative;
};

struct BprTrainStats {
    std::size_t samples = 0;
    /// Samples dropped because the playlist contains every track.
    std::size_t skipped_full_playlists = 0;
};

/// ln sigma(x), stable for large |x|.
double log_sigmoid(double x);

/// ln sigma(f_p . (f_t - f_t')) - lambda (|f_p|^2 + |f_t|^2 + |f_t'|^2)
double bpr_triple_objective(std::span<const double> playlist, std::span<const double> positive,
                            std::span<const double> negative, double lambda);

struct BprGradient {
    std::vector<double> playlist;
    std::vector<double> positive;
    std::vector<double> negative;
};

/// Gradient of bpr_triple_objective with respect to the three factor rows.
BprGradient bpr_triple_gradient(std::span<const double> playlist, std::span<const double> positive,
                                std::span<const double> negative, double lambda);

/// sum over triples of ln sigma(x_ptt') minus lambda |Theta|^2 over the
/// whole model.
double bpr_criterion(const FactorModel& model, std::span<const BprTriple> triples, double lambda);

/// Throws DataError when the matrix has fewer than two tracks.
FactorModel bpr_train(const InteractionMatrix& matrix, const BprConfig& config, BprTrainStats* stats = nullptr);

/// Fold-in by regularized least squares against the track factors (binary
/// targets, unit confidence, lambda = config.lambda).
std::vector<double> bpr_fold_in(const FactorModel& model, const DenseMatrix& track_gram, const SparseVector& query,
                                const BprConfig& config);

ScoredRanking bpr_score(const FactorModel& model, const SparseVector& query, std::span<const Index> candidates,
                        const BprConfig& config);

}  // namespace longtail

#include "longtail/recommenders/als.hpp"

#include <random>

#include "longtail/error.hpp"
#include "longtail/log.hpp"
#include "longtail/simd/kernels.hpp"

namespace longtail {

void AlsConfig::validate() const {
    if (factors < 1) throw DataError("als: factors must be >= 1");
    if (sweeps < 1) throw DataError("als: sweeps must be >= 1");
    if (!(alpha >= 0.0)) throw DataError("als: alpha must be non-negative");
    if (!(lambda >= 0.0)) throw DataError("als: lambda must be non-negative");
    if (!(init_std > 0.0)) throw DataError("als: init_std must be positive");
}

namespace {

void store_row(DenseMatrix& m, std::size_t r, const std::vector<double>& v) {
    std::copy(v.begin(), v.end(), m.row(r).begin());
}

}  // namespace

void als_update_playlists(const InteractionMatrix& matrix, const DenseMatrix& track_factors,
                          DenseMatrix& playlist_factors, double alpha, double lambda) {
    const DenseMatrix yty = gram(track_factors);
    for (Index p = 0; p < matrix.num_playlists(); ++p) {
        store_row(playlist_factors, p, solve_factor(matrix.row(p), track_factors, yty, alpha, lambda));
    }
}

void als_update_tracks(const InteractionMatrix& matrix, const DenseMatrix& playlist_factors,
                       DenseMatrix& track_factors, double alpha, double lambda) {
    const DenseMatrix xtx = gram(playlist_factors);
    for (Index t = 0; t < matrix.num_tracks(); ++t) {
        store_row(track_factors, t, solve_factor(matrix.column(t), playlist_factors, xtx, alpha, lambda));
    }
}

double als_cost(const InteractionMatrix& matrix, const FactorModel& model, double alpha, double lambda) {
    const auto& x = model.playlist_factors;
    const auto& y = model.track_factors;
    const std::size_t f = model.factors();

    // sum over every cell of (f_t . f_p)^2 = sum_p f_p^T (Y^T Y) f_p
    const DenseMatrix yty = gram(y);
    std::vector<double> tmp(f);
    double all_sq = 0.0;
    for (std::size_t p = 0; p < x.rows(); ++p) {
        const auto fp = x.row(p);
        for (std::size_t i = 0; i < f; ++i) tmp[i] = simd::dot(yty.row(i), fp);
        all_sq += simd::dot(tmp, fp);
    }
    // Correct the observed cells: c (1 - s)^2 replaces s^2.
    double observed = 0.0;
    for (Index p = 0; p < matrix.num_playlists(); ++p) {
        const SparseView r = matrix.row(p);
        for (std::size_t k = 0; k < r.size(); ++k) {
            const double s = simd::dot(y.row(r.indices[k]), x.row(p));
            const double c = 1.0 + alpha * r.values[k];
            observed += c * (1.0 - s) * (1.0 - s) - s * s;
        }
    }
    const double reg = simd::dot(x.data(), x.data()) + simd::dot(y.data(), y.data());
    return all_sq + observed + lambda * reg;
}

FactorModel als_train(const InteractionMatrix& matrix, const AlsConfig& config) {
    config.validate();
    if (matrix.num_playlists() == 0 || matrix.num_tracks() == 0) {
        throw DataError("als: training matrix must have at least one playlist and one track");
    }
    FactorModel model{DenseMatrix(matrix.num_playlists(), config.factors),
                      DenseMatrix(matrix.num_tracks(), config.factors)};
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> init(0.0, config.init_std);
    for (double& v : model.playlist_factors.data()) v = init(rng);
    for (double& v : model.track_factors.data()) v = init(rng);

    for (std::size_t sweep = 0; sweep < config.sweeps; ++sweep) {
        als_update_playlists(matrix, model.track_factors, model.playlist_factors, config.alpha, config.lambda);
        als_update_tracks(matrix, model.playlist_factors, model.track_factors, config.alpha, config.lambda);
        if (log().should_log(spdlog::level::trace)) {
            log().trace("als sweep {}: cost {}", sweep + 1, als_cost(matrix, model, config.alpha, config.lambda));
        }
    }
    if (!model.all_finite()) throw NumericalError("als: non-finite factors after training");
    return model;
}

std::vector<double> als_fold_in(const FactorModel& model, const DenseMatrix& track_gram, const SparseVector& query,
                                const AlsConfig& config) {
    for (Index t : query.indices) {
        if (t >= model.track_factors.rows()) throw std::out_of_range("query track outside model");
    }
    return solve_factor(query.view(), model.track_factors, track_gram, config.alpha, config.lambda);
}

std::vector<double> als_fold_in(const FactorModel& model, const SparseVector& query, const AlsConfig& config) {
    return als_fold_in(model, gram(model.track_factors), query, config);
}

}  // namespace longtail

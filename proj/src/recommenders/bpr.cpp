#include "longtail/recommenders/bpr.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "longtail/error.hpp"
#include "longtail/log.hpp"
#include "longtail/simd/kernels.hpp"

namespace longtail {

void BprConfig::validate() const {
    if (factors < 1) throw DataError("bpr: factors must be >= 1");
    if (!(learning_rate > 0.0)) throw DataError("bpr: learning_rate must be positive");
    if (!(lambda >= 0.0)) throw DataError("bpr: lambda must be non-negative");
    if (epochs < 1) throw DataError("bpr: epochs must be >= 1");
    if (!(init_std > 0.0)) throw DataError("bpr: init_std must be positive");
}

double log_sigmoid(double x) {
    return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

namespace {

// sigma(-x) = 1 - sigma(x)
double sigmoid_complement(double x) {
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

double pairwise_margin(std::span<const double> p, std::span<const double> t, std::span<const double> n) {
    return simd::dot(p, t) - simd::dot(p, n);
}

}  // namespace

double bpr_triple_objective(std::span<const double> playlist, std::span<const double> positive,
                            std::span<const double> negative, double lambda) {
    const double x = pairwise_margin(playlist, positive, negative);
    const double reg = simd::dot(playlist, playlist) + simd::dot(positive, positive) + simd::dot(negative, negative);
    return log_sigmoid(x) - lambda * reg;
}

BprGradient bpr_triple_gradient(std::span<const double> playlist, std::span<const double> positive,
                                std::span<const double> negative, double lambda) {
    const std::size_t f = playlist.size();
    const double g = sigmoid_complement(pairwise_margin(playlist, positive, negative));
    BprGradient out{std::vector<double>(f), std::vector<double>(f), std::vector<double>(f)};
    for (std::size_t i = 0; i < f; ++i) {
        out.playlist[i] = g * (positive[i] - negative[i]) - 2.0 * lambda * playlist[i];
        out.positive[i] = g * playlist[i] - 2.0 * lambda * positive[i];
        out.negative[i] = -g * playlist[i] - 2.0 * lambda * negative[i];
    }
    return out;
}

double bpr_criterion(const FactorModel& model, std::span<const BprTriple> triples, double lambda) {
    double s = 0.0;
    for (const auto& tr : triples) {
        s += log_sigmoid(pairwise_margin(model.playlist_factors.row(tr.playlist), model.track_factors.row(tr.positive),
                                         model.track_factors.row(tr.negative)));
    }
    const auto& x = model.playlist_factors.data();
    const auto& y = model.track_factors.data();
    return s - lambda * (simd::dot(x, x) + simd::dot(y, y));
}

FactorModel bpr_train(const InteractionMatrix& matrix, const BprConfig& config, BprTrainStats* stats) {
    config.validate();
    const std::size_t m = matrix.num_playlists();
    const std::size_t n = matrix.num_tracks();
    if (n < 2) throw DataError("bpr: need at least two tracks to form preference pairs");

    FactorModel model{DenseMatrix(m, config.factors), DenseMatrix(n, config.factors)};
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> init(0.0, config.init_std);
    for (double& v : model.playlist_factors.data()) v = init(rng);
    for (double& v : model.track_factors.data()) v = init(rng);

    BprTrainStats local;
    const std::size_t nnz = matrix.nnz();
    if (nnz == 0) {
        log().warn("bpr: training matrix has no interactions; returning initial factors");
        if (stats) *stats = local;
        return model;
    }

    // Uniform over stored entries: playlist chosen proportional to its size,
    // positive track uniform within it.
    std::vector<Index> entry_row;
    std::vector<Index> entry_col;
    entry_row.reserve(nnz);
    entry_col.reserve(nnz);
    for (Index p = 0; p < m; ++p) {
        for (Index t : matrix.row(p).indices) {
            entry_row.push_back(p);
            entry_col.push_back(t);
        }
    }

    const std::size_t per_epoch = config.samples_per_epoch ? config.samples_per_epoch : nnz;
    std::uniform_int_distribution<std::size_t> pick_entry(0, nnz - 1);
    std::uniform_int_distribution<Index> pick_track(0, static_cast<Index>(n - 1));
    const std::size_t f = config.factors;
    std::vector<double> gp(f), gt(f), gn(f);
    const double lr = config.learning_rate;
    const double two_lambda = 2.0 * config.lambda;

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        for (std::size_t s = 0; s < per_epoch; ++s) {
            const std::size_t e = pick_entry(rng);
            const Index p = entry_row[e];
            const Index t = entry_col[e];
            const SparseView row = matrix.row(p);
            ++local.samples;
            if (row.size() == n) {
                ++local.skipped_full_playlists;
                continue;
            }
            Index neg;
            do {
                neg = pick_track(rng);
            } while (std::binary_search(row.indices.begin(), row.indices.end(), neg));

            auto fp = model.playlist_factors.row(p);
            auto ft = model.track_factors.row(t);
            auto fn = model.track_factors.row(neg);
            const double g = sigmoid_complement(pairwise_margin(fp, ft, fn));
            // Gradients from the pre-update values of all three rows.
            for (std::size_t i = 0; i < f; ++i) {
                gp[i] = g * (ft[i] - fn[i]) - two_lambda * fp[i];
                gt[i] = g * fp[i] - two_lambda * ft[i];
                gn[i] = -g * fp[i] - two_lambda * fn[i];
            }
            simd::axpy(lr, gp, fp);
            simd::axpy(lr, gt, ft);
            simd::axpy(lr, gn, fn);
        }
    }
    if (local.skipped_full_playlists > 0) {
        log().info("bpr: skipped {} samples from playlists containing every track", local.skipped_full_playlists);
    }
    if (!model.all_finite()) throw NumericalError("bpr: non-finite factors after training");
    if (stats) *stats = local;
    return model;
}

std::vector<double> bpr_fold_in(const FactorModel& model, const DenseMatrix& track_gram, const SparseVector& query,
                                const BprConfig& config) {
    for (Index t : query.indices) {
        if (t >= model.track_factors.rows()) throw std::out_of_range("query track outside model");
    }
    // alpha = 0: unit confidence everywhere.
    return solve_factor(query.view(), model.track_factors, track_gram, 0.0, config.lambda);
}

ScoredRanking bpr_score(const FactorModel& model, const SparseVector& query, std::span<const Index> candidates,
                        const BprConfig& config) {
    const auto folded = bpr_fold_in(model, gram(model.track_factors), query, config);
    return factor_score(model, folded, candidates);
}

}  // namespace longtail

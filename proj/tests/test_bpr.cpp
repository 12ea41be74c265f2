#include <doctest.h>

#include <cmath>
#include <random>

#include "bpr_oracle.hpp"
#include "longtail/error.hpp"
#include "longtail/recommenders/bpr.hpp"
#include "longtail/simd/kernels.hpp"
#include "oracles.hpp"

using namespace longtail;
using namespace longtail::testing;

namespace {

// Two blocks: playlists 0..9 use tracks 0..14, playlists 10..19 use 15..29.
InteractionMatrix planted_blocks() {
    std::vector<Triplet> t;
    for (Index p = 0; p < 20; ++p) {
        for (Index c = 0; c < 30; ++c) {
            if ((p < 10) == (c < 15) && (p * 7 + c) % 3 != 0) t.push_back({p, c, 1.0});
        }
    }
    return InteractionMatrix::from_triplets(20, 30, t);
}

}  // namespace

TEST_CASE("log_sigmoid is stable and correct") {
    CHECK(log_sigmoid(0.0) == doctest::Approx(std::log(0.5)));
    CHECK(log_sigmoid(800.0) == 0.0);
    CHECK(log_sigmoid(-800.0) == doctest::Approx(-800.0));
    for (double x : {-5.0, -0.3, 0.7, 4.0}) CHECK(log_sigmoid(x) == doctest::Approx(std::log(1.0 / (1.0 + std::exp(-x)))).epsilon(1e-14));
}

TEST_CASE("criterion at Theta = 0 is |D| ln 0.5") {
    const FactorModel zero{DenseMatrix(3, 4), DenseMatrix(5, 4)};
    const std::vector<BprTriple> d{{0, 1, 2}, {1, 0, 4}, {2, 3, 1}, {0, 2, 3}};
    CHECK(bpr_criterion(zero, d, 0.7) == doctest::Approx(4.0 * std::log(0.5)).epsilon(1e-15));
}

TEST_CASE("criterion equals the sum of per-triple objectives when rows are distinct") {
    std::mt19937_64 rng(6);
    FactorModel model{random_dense(2, 3, rng), random_dense(4, 3, rng)};
    const std::vector<BprTriple> d{{0, 0, 1}, {1, 2, 3}};
    const double lambda = 0.05;
    double sum = 0.0;
    for (const auto& tr : d) {
        sum += bpr_triple_objective(model.playlist_factors.row(tr.playlist), model.track_factors.row(tr.positive),
                                    model.track_factors.row(tr.negative), lambda);
    }
    CHECK(bpr_criterion(model, d, lambda) == doctest::Approx(sum).epsilon(1e-13));
}

TEST_CASE("analytic gradient matches central finite differences") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        const double err = bpr_gradient_rel_error(rng, 1 + i % 8, i % 2 ? 0.01 : 0.3);
        CHECK(err < 1e-4);
    }
}

TEST_CASE("planted two-block matrix separates held-in from cross-block tracks") {
    const auto x = planted_blocks();
    BprConfig cfg;
    cfg.factors = 8;
    cfg.epochs = 300;
    cfg.seed = 5;
    const auto model = bpr_train(x, cfg);
    // AUC of own-block tracks over other-block tracks, per playlist
    std::size_t wins = 0, pairs = 0;
    for (Index p = 0; p < 20; ++p) {
        for (Index a = 0; a < 30; ++a) {
            for (Index b = 0; b < 30; ++b) {
                if ((a < 15) != (p < 10) || (b < 15) == (p < 10)) continue;
                const double sa = simd::dot(model.playlist_factors.row(p), model.track_factors.row(a));
                const double sb = simd::dot(model.playlist_factors.row(p), model.track_factors.row(b));
                wins += sa > sb ? 1 : 0;
                ++pairs;
            }
        }
    }
    CHECK(static_cast<double>(wins) / static_cast<double>(pairs) > 0.9);

    // training raises the criterion over a fixed sample of D
    std::mt19937_64 rng(1);
    std::vector<BprTriple> d;
    for (Index p = 0; p < 20; ++p) {
        const auto row = x.row(p);
        for (Index t : row.indices) {
            Index n;
            do {
                n = static_cast<Index>(rng() % 30);
            } while (x.at(p, n) != 0.0);
            d.push_back({p, t, n});
        }
    }
    BprConfig one = cfg;
    one.epochs = 1;
    CHECK(bpr_criterion(model, d, cfg.lambda) > bpr_criterion(bpr_train(x, one), d, cfg.lambda));
}

TEST_CASE("degenerate inputs") {
    BprConfig cfg;
    cfg.factors = 2;
    cfg.epochs = 2;
    CHECK_THROWS_AS(bpr_train(InteractionMatrix::from_triplets(3, 1, {{0, 0, 1.0}}), cfg), DataError);

    // playlist 0 contains every track: its samples are skipped
    const auto x = InteractionMatrix::from_triplets(2, 3, {{0, 0, 1.0}, {0, 1, 1.0}, {0, 2, 1.0}, {1, 0, 1.0}});
    BprTrainStats stats;
    const auto m = bpr_train(x, cfg, &stats);
    CHECK(stats.samples == 8);
    CHECK(stats.skipped_full_playlists > 0);
    CHECK(stats.skipped_full_playlists < 8);
    CHECK(m.all_finite());

    const auto empty = InteractionMatrix::from_triplets(2, 3, {});
    BprTrainStats es;
    CHECK(bpr_train(empty, cfg, &es).all_finite());
    CHECK(es.samples == 0);

    BprConfig bad = cfg;
    bad.learning_rate = 0.0;
    CHECK_THROWS_AS(bpr_train(x, bad), DataError);
}

TEST_CASE("training is deterministic for a seed") {
    const auto x = planted_blocks();
    BprConfig cfg;
    cfg.factors = 4;
    cfg.epochs = 5;
    cfg.seed = 11;
    CHECK(bpr_train(x, cfg) == bpr_train(x, cfg));
}

TEST_CASE("fold-in is ridge regression against the track factors") {
    std::mt19937_64 rng(3);
    FactorModel model{random_dense(4, 3, rng), random_dense(9, 3, rng)};
    BprConfig cfg;
    cfg.lambda = 0.2;
    const SparseVector q = SparseVector::ones({1, 4, 6});
    std::vector<double> dense(9, 0.0);
    for (Index t : q.indices) dense[t] = 1.0;
    const auto got = bpr_fold_in(model, gram(model.track_factors), q, cfg);
    const auto want = ridge(model.track_factors, dense, 0.2);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-10);

    // shifting every score by a constant leaves the ranking unchanged
    const std::vector<Index> cands{0, 2, 3, 5, 7, 8};
    const auto base = bpr_score(model, q, cands, cfg);
    std::vector<double> shifted;
    std::vector<Index> idx;
    for (const auto& e : base.entries) {
        idx.push_back(e.track);
        shifted.push_back(e.score + 123.0);
    }
    CHECK(make_ranking(idx, shifted).order() == base.order());
}

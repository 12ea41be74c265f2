#include "longtail/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <random>
#include <thread>

#include "longtail/error.hpp"
#include "longtail/ingest.hpp"
#include "longtail/log.hpp"
#include "longtail/seed.hpp"

namespace longtail::eval {

FoldPlan make_folds(std::span<const Index> local_playlists, std::size_t k, std::uint64_t seed, std::string city) {
    if (k < 2) throw DataError("need at least 2 folds");
    std::vector<Index> order(local_playlists.begin(), local_playlists.end());
    std::sort(order.begin(), order.end());
    if (std::adjacent_find(order.begin(), order.end()) != order.end()) {
        throw DataError("duplicate playlist in fold input");
    }
    if (order.size() < k) {
        throw DataError("city '" + city + "' has " + std::to_string(order.size()) + " local playlists, fewer than " +
                        std::to_string(k) + " folds");
    }
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    FoldPlan plan;
    plan.city = std::move(city);
    plan.seed = seed;
    plan.folds.resize(k);
    for (std::size_t i = 0; i < order.size(); ++i) plan.folds[i % k].push_back(order[i]);
    for (auto& f : plan.folds) std::sort(f.begin(), f.end());
    return plan;
}

FoldData build_fold_matrices(const InteractionMatrix& matrix, const geo::LocalityTable& locality,
                             const std::string& city, const FoldPlan& plan, std::size_t fold_index,
                             bool include_nonlocal_in_train) {
    if (fold_index >= plan.folds.size()) throw DataError("fold index " + std::to_string(fold_index) + " out of range");
    const auto& loc = locality.city(city);
    const std::size_t m = matrix.num_playlists();
    const std::size_t n = matrix.num_tracks();

    std::vector<char> is_local(n, 0);
    for (Index t : loc.tracks) {
        if (t < n) is_local[t] = 1;
    }
    std::vector<char> held(m, 0);
    for (Index p : plan.folds[fold_index]) {
        if (p >= m) throw DataError("fold references playlist outside the matrix");
        held[p] = 1;
    }

    FoldData fd;
    fd.fold_index = fold_index;
    for (Index p = 0; p < m; ++p) {
        if (!held[p]) fd.train_rows.push_back(p);
    }

    std::vector<Triplet> entries;
    std::vector<std::size_t> train_count(n, 0);
    for (std::size_t i = 0; i < fd.train_rows.size(); ++i) {
        const SparseView r = matrix.row(fd.train_rows[i]);
        for (std::size_t k = 0; k < r.size(); ++k) {
            entries.push_back({static_cast<Index>(i), r.indices[k], r.values[k]});
            ++train_count[r.indices[k]];
        }
    }

    for (Index t : loc.tracks) {
        if (t >= n) continue;
        if (train_count[t] > 0) {
            fd.candidates.push_back(t);
        } else {
            ++fd.unseen_local_tracks;
        }
    }
    std::vector<char> is_candidate(n, 0);
    for (Index t : fd.candidates) is_candidate[t] = 1;

    std::size_t next_row = fd.train_rows.size();
    for (Index p : plan.folds[fold_index]) {
        const SparseView r = matrix.row(p);
        SplitPlaylist sp;
        sp.playlist = p;
        std::vector<Index> idx;
        std::vector<double> vals;
        bool any_local = false;
        for (std::size_t k = 0; k < r.size(); ++k) {
            const Index t = r.indices[k];
            if (is_local[t]) {
                any_local = true;
                if (is_candidate[t]) sp.local_truth.push_back(t);
            } else {
                idx.push_back(t);
                vals.push_back(r.values[k]);
            }
        }
        if (!any_local) continue;  // not a local playlist of this city
        if (include_nonlocal_in_train && !idx.empty()) {
            for (std::size_t k = 0; k < idx.size(); ++k) {
                entries.push_back({static_cast<Index>(next_row), idx[k], vals[k]});
            }
            ++next_row;
            ++fd.partial_rows;
        }
        if (sp.local_truth.empty()) {
            ++fd.excluded_eval;
            continue;
        }
        sp.non_local = SparseVector(std::move(idx), std::move(vals));
        fd.eval.push_back(std::move(sp));
    }
    fd.train = InteractionMatrix::from_triplets(next_row, n, std::move(entries));
    if (fd.excluded_eval > 0 || fd.unseen_local_tracks > 0) {
        log().info("{} fold {}: {} local track(s) unseen in training, {} eval playlist(s) without scoreable truth",
                   city, fold_index, fd.unseen_local_tracks, fd.excluded_eval);
    }
    return fd;
}

std::string_view to_string(Level level) { return level == Level::track ? "track" : "artist"; }

std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::ndcg: return "ndcg";
        case Metric::rprec: return "rprec";
        case Metric::prec1: return "prec1";
    }
    return "?";
}

CellStats summarize_folds(std::vector<double> per_fold) {
    CellStats c;
    c.per_fold = std::move(per_fold);
    const double k = static_cast<double>(c.per_fold.size());
    if (c.per_fold.empty()) return c;
    c.mean = std::accumulate(c.per_fold.begin(), c.per_fold.end(), 0.0) / k;
    if (c.per_fold.size() > 1) {
        double ss = 0.0;
        for (double v : c.per_fold) ss += (v - c.mean) * (v - c.mean);
        c.se = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
    }
    return c;
}

std::vector<std::string> EvalReport::failures() const {
    std::vector<std::string> out;
    for (const auto& c : cities) {
        for (const auto& m : c.models) {
            if (m.error) out.push_back(c.city + " / " + std::string(to_string(m.model)) + ": " + *m.error);
        }
    }
    return out;
}

std::uint64_t fold_seed(std::uint64_t seed, const std::string& city, std::size_t fold) {
    return combine_seed(combine_seed(seed, hash_string(city)), fold);
}

FoldScores score_fold(const Scorer& scorer, const FoldData& fold, std::span<const Index> track_artist) {
    FoldScores acc;
    if (fold.eval.empty()) throw DataError("fold " + std::to_string(fold.fold_index) + " has no evaluable playlists");
    for (const auto& sp : fold.eval) {
        const ScoredRanking ranking = scorer.score(sp.non_local, fold.candidates, sp.playlist);
        const auto order = ranking.order();
        const metrics::GroundTruth truth(sp.local_truth);
        const auto t = metrics::evaluate(order, truth);
        const auto reduced = metrics::artist_level(order, truth, track_artist);
        const auto a = metrics::evaluate(reduced.order, reduced.truth);
        acc.track.ndcg += t.ndcg;
        acc.track.rprec += t.rprec;
        acc.track.prec1 += t.prec1;
        acc.artist.ndcg += a.ndcg;
        acc.artist.rprec += a.rprec;
        acc.artist.prec1 += a.prec1;
    }
    const double n = static_cast<double>(fold.eval.size());
    for (auto* s : {&acc.track, &acc.artist}) {
        s->ndcg /= n;
        s->rprec /= n;
        s->prec1 /= n;
    }
    return acc;
}

namespace {

std::string cache_key(ModelKind kind, const ModelConfigs& configs, std::uint64_t seed, const InteractionMatrix& train) {
    std::string desc;
    if (kind == ModelKind::als) {
        const auto& c = configs.als;
        desc = fmt::format("als f={} a={} l={} s={} i={}", c.factors, c.alpha, c.lambda, c.sweeps, c.init_std);
    } else {
        const auto& c = configs.bpr;
        desc = fmt::format("bpr f={} lr={} l={} e={} s={} i={}", c.factors, c.learning_rate, c.lambda, c.epochs,
                           c.samples_per_epoch, c.init_std);
    }
    desc += fmt::format(" seed={} m={} n={} nnz={}", seed, train.num_playlists(), train.num_tracks(), train.nnz());
    // Content digest of the training matrix so equal shapes with different data do not collide.
    std::uint64_t h = hash_string(desc);
    for (const auto& e : train.triplets()) h = combine_seed(h, (std::uint64_t{e.row} << 32) | e.col);
    return fmt::format("{}-{:016x}.ltrc", to_string(kind), h);
}

void train_with_cache(Scorer& scorer, const ModelConfigs& configs, std::uint64_t seed, const InteractionMatrix& train,
                      const std::optional<std::filesystem::path>& cache) {
    const bool factor_model = scorer.kind() == ModelKind::als || scorer.kind() == ModelKind::bpr;
    if (!cache || !factor_model) {
        scorer.train(train);
        return;
    }
    const auto path = *cache / cache_key(scorer.kind(), configs, seed, train);
    if (std::filesystem::exists(path)) {
        FactorModel m = load_factor_model(path);
        if (m.playlist_factors.rows() == train.num_playlists() && m.track_factors.rows() == train.num_tracks()) {
            log().debug("loaded cached model {}", path.string());
            scorer.adopt(std::move(m));
            return;
        }
        log().warn("cached model {} has mismatched dimensions; retraining", path.string());
    }
    scorer.train(train);
    std::filesystem::create_directories(*cache);
    const auto tmp = path.string() + ".tmp";
    save_factor_model(tmp, *scorer.factors());
    std::filesystem::rename(tmp, path);
}

struct TaskResult {
    std::optional<std::string> error;
    FoldScores scores;
};

}  // namespace

CityReport run_city(const InteractionMatrix& matrix, const Catalog& catalog, const geo::LocalityTable& locality,
                    const std::string& city, std::span<const ModelKind> models, const ModelConfigs& configs,
                    std::uint64_t seed, const RunOptions& options) {
    const auto& loc = locality.city(city);
    const auto local = ingest::local_playlists(matrix, loc);
    std::size_t local_in_matrix = 0;
    for (Index t : loc.tracks) local_in_matrix += t < matrix.num_tracks() ? 1 : 0;
    if (local_in_matrix < 2) {
        throw DataError("city '" + city + "' has " + std::to_string(local_in_matrix) +
                        " local tracks in the matrix; need at least 2");
    }
    if (local.size() < options.folds) {
        throw DataError("city '" + city + "' has " + std::to_string(local.size()) + " local playlists; need at least " +
                        std::to_string(options.folds));
    }
    if (catalog.num_tracks() != matrix.num_tracks()) throw DataError("catalog and matrix track counts differ");

    CityReport report;
    report.city = city;
    report.local_playlists = local.size();
    report.local_artists = loc.artists.size();
    report.local_tracks = local_in_matrix;

    const FoldPlan plan = make_folds(local, options.folds, combine_seed(seed, hash_string(city)), city);
    std::vector<FoldData> folds;
    folds.reserve(plan.folds.size());
    std::optional<std::string> fold_problem;
    for (std::size_t f = 0; f < plan.folds.size(); ++f) {
        folds.push_back(build_fold_matrices(matrix, locality, city, plan, f, options.include_nonlocal_in_train));
        report.eval_per_fold.push_back(folds.back().eval.size());
        report.candidates_per_fold.push_back(folds.back().candidates.size());
        report.excluded_per_fold.push_back(folds.back().excluded_eval);
        if (folds.back().eval.empty() && !fold_problem) {
            fold_problem = "fold " + std::to_string(f) + " has no evaluable playlists";
        }
    }

    const std::size_t num_tasks = folds.size() * models.size();
    std::vector<TaskResult> results(num_tasks);
    const auto track_artist = std::span<const Index>(catalog.track_artist());

    auto run_task = [&](std::size_t task) {
        const std::size_t f = task / models.size();
        const ModelKind kind = models[task % models.size()];
        TaskResult& out = results[task];
        try {
            const std::uint64_t s = combine_seed(fold_seed(seed, city, f), static_cast<std::uint64_t>(kind));
            auto scorer = make_scorer(kind, configs, s);
            train_with_cache(*scorer, configs, s, folds[f].train, options.model_cache);
            out.scores = score_fold(*scorer, folds[f], track_artist);
        } catch (const std::exception& e) {
            out.error = fmt::format("fold {}: {}", f, e.what());
        }
    };

    if (!fold_problem) {
        const std::size_t workers = std::max<std::size_t>(1, std::min(options.jobs, num_tasks));
        if (workers == 1) {
            for (std::size_t t = 0; t < num_tasks; ++t) run_task(t);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t t = next++; t < num_tasks; t = next++) run_task(t);
                });
            }
        }
    }

    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        ModelResult mr;
        mr.model = models[mi];
        if (fold_problem) {
            mr.error = *fold_problem;
            report.models.push_back(std::move(mr));
            continue;
        }
        std::array<std::vector<double>, 6> per_fold;
        for (std::size_t f = 0; f < folds.size() && !mr.error; ++f) {
            const TaskResult& r = results[f * models.size() + mi];
            if (r.error) {
                mr.error = r.error;
                break;
            }
            for (Level l : kLevels) {
                const auto& s = l == Level::track ? r.scores.track : r.scores.artist;
                per_fold[ModelResult::slot(l, Metric::ndcg)].push_back(s.ndcg);
                per_fold[ModelResult::slot(l, Metric::rprec)].push_back(s.rprec);
                per_fold[ModelResult::slot(l, Metric::prec1)].push_back(s.prec1);
            }
        }
        if (!mr.error) {
            for (std::size_t c = 0; c < per_fold.size(); ++c) mr.cells[c] = summarize_folds(std::move(per_fold[c]));
        } else {
            log().warn("{} / {}: {}", city, to_string(mr.model), *mr.error);
        }
        report.models.push_back(std::move(mr));
    }
    return report;
}

}  // namespace longtail::eval

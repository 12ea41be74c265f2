#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "longtail/geo.hpp"
#include "longtail/interaction_matrix.hpp"
#include "longtail/metrics.hpp"
#include "longtail/recommenders/scorer.hpp"

namespace longtail::eval {

/// Disjoint playlist folds covering every local playlist of a city.
struct FoldPlan {
    std::string city;
    std::vector<std::vector<Index>> folds;  // each sorted ascending
    std::uint64_t seed = 0;
};

/// Seeded shuffle, then round-robin assignment: fold sizes differ by at most
/// one. Throws DataError when k < 2 or there are fewer playlists than folds.
FoldPlan make_folds(std::span<const Index> local_playlists, std::size_t k, std::uint64_t seed,
                    std::string city = {});

/// A held-out playlist split into model input and ground truth.
struct SplitPlaylist {
    Index playlist;
    SparseVector non_local;        // tracks that are not local to the city
    std::vector<Index> local_truth;  // local tracks that are also candidates
};

struct FoldData {
    std::size_t fold_index = 0;
    InteractionMatrix train;
    /// Original playlist index of each full training row (row i of `train`).
    std::vector<Index> train_rows;
    /// Rows appended after the full rows holding eval playlists' non-local
    /// halves (only with include_nonlocal_in_train).
    std::size_t partial_rows = 0;
    /// City-local tracks with at least one training occurrence, ascending.
    std::vector<Index> candidates;
    std::vector<SplitPlaylist> eval;
    /// Held-out playlists dropped because none of their local tracks is a
    /// candidate.
    std::size_t excluded_eval = 0;
    /// City-local tracks absent from the training rows.
    std::size_t unseen_local_tracks = 0;
};

FoldData build_fold_matrices(const InteractionMatrix& matrix, const geo::LocalityTable& locality,
                             const std::string& city, const FoldPlan& plan, std::size_t fold_index,
                             bool include_nonlocal_in_train = false);

enum class Level { track, artist };
enum class Metric { ndcg, rprec, prec1 };

inline constexpr Level kLevels[] = {Level::track, Level::artist};
inline constexpr Metric kMetrics[] = {Metric::ndcg, Metric::rprec, Metric::prec1};

std::string_view to_string(Level level);
std::string_view to_string(Metric metric);

/// Mean and standard error (sample std / sqrt(k)) over fold values.
struct CellStats {
    std::vector<double> per_fold;
    double mean = 0.0;
    double se = 0.0;
};

CellStats summarize_folds(std::vector<double> per_fold);

struct ModelResult {
    ModelKind model = ModelKind::iin;
    /// Set when training or scoring failed in any fold; cells are then empty.
    std::optional<std::string> error;
    std::array<CellStats, 6> cells{};

    static constexpr std::size_t slot(Level l, Metric m) {
        return static_cast<std::size_t>(l) * 3 + static_cast<std::size_t>(m);
    }
    const CellStats& cell(Level l, Metric m) const { return cells[slot(l, m)]; }
};

struct CityReport {
    std::string city;
    std::size_t local_playlists = 0;
    std::size_t local_artists = 0;
    std::size_t local_tracks = 0;
    std::vector<std::size_t> eval_per_fold;
    std::vector<std::size_t> candidates_per_fold;
    std::vector<std::size_t> excluded_per_fold;
    std::vector<ModelResult> models;
};

struct EvalReport {
    std::vector<CityReport> cities;

    std::vector<std::string> failures() const;
};

struct RunOptions {
    std::size_t folds = 5;
    std::size_t jobs = 1;
    bool include_nonlocal_in_train = false;
    /// When set, factor models are loaded from / saved to this directory.
    std::optional<std::filesystem::path> model_cache;
};

std::uint64_t fold_seed(std::uint64_t seed, const std::string& city, std::size_t fold);

/// Per-fold average metrics of one trained scorer over a fold's eval set.
struct FoldScores {
    metrics::MetricSet track;
    metrics::MetricSet artist;
};

FoldScores score_fold(const Scorer& scorer, const FoldData& fold, std::span<const Index> track_artist);

/// Runs every fold and model for one city. Throws UnknownEntity for an
/// unknown city and DataError when the city has fewer local playlists than
/// folds or fewer than two local tracks. Model failures are recorded in the
/// result, not thrown.
CityReport run_city(const InteractionMatrix& matrix, const Catalog& catalog, const geo::LocalityTable& locality,
                    const std::string& city, std::span<const ModelKind> models, const ModelConfigs& configs,
                    std::uint64_t seed, const RunOptions& options = {});

}  // namespace longtail::eval

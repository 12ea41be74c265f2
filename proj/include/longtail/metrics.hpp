#pragma once

#include <span>
#include <vector>

#include "longtail/interaction_matrix.hpp"
#include "longtail/recommenders/ranking.hpp"

namespace longtail::metrics {

/// Held-out relevant items (tracks, or artists after reduction).
struct GroundTruth {
    std::vector<Index> relevant;  // sorted, unique

    GroundTruth() = default;
    explicit GroundTruth(std::vector<Index> items);

    bool contains(Index i) const;
    std::size_t size() const noexcept { return relevant.size(); }
};

// All metrics look only at the order of items, never at score values.
// Each throws DataError when the relevant set (or, for precision_at_1, the
// ranking) is empty.

/// Binary-gain DCG with log2(i + 1) discount over the full ranking,
/// normalized by the DCG of placing all relevant items first.
double ndcg(std::span<const Index> order, const GroundTruth& truth);
/// Relevant items among the top R, divided by R = |relevant|.
double r_precision(std::span<const Index> order, const GroundTruth& truth);
/// 1 if the first item is relevant, else 0.
double precision_at_1(std::span<const Index> order, const GroundTruth& truth);

struct MetricSet {
    double ndcg = 0.0;
    double rprec = 0.0;
    double prec1 = 0.0;
};

MetricSet evaluate(std::span<const Index> order, const GroundTruth& truth);

struct ArtistLevel {
    std::vector<Index> order;  // artists by first occurrence
    GroundTruth truth;         // artists owning a relevant track
};

/// Reduces a track order to the order of first occurrence of each artist.
/// Throws DataError when a track has no artist in `track_artist`.
ArtistLevel artist_level(std::span<const Index> track_order, const GroundTruth& truth,
                         std::span<const Index> track_artist);

}  // namespace longtail::metrics

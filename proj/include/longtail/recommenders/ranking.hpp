#pragma once

#include <span>
#include <vector>

#include "longtail/interaction_matrix.hpp"

namespace longtail {

struct RankedTrack {
    Index track;
    double score;

    bool operator==(const RankedTrack&) const = default;
};

/// Candidates ordered by descending score, ties by ascending track index.
struct ScoredRanking {
    std::vector<RankedTrack> entries;
    /// Set when the scorer had no evidence (e.g. empty query) and every
    /// score is tied, so the order is the tie-break order.
    bool fallback_order = false;

    std::size_t size() const noexcept { return entries.size(); }
    bool empty() const noexcept { return entries.empty(); }
    /// Track indices in rank order.
    std::vector<Index> order() const;
};

/// Builds a ranking from parallel candidate/score arrays. Throws
/// std::invalid_argument on length mismatch or duplicate candidates.
ScoredRanking make_ranking(std::span<const Index> candidates, std::span<const double> scores);

}  // namespace longtail

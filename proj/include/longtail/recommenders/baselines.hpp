#pragma once

#include <cstdint>
#include <span>

#include "longtail/interaction_matrix.hpp"
#include "longtail/recommenders/ranking.hpp"

namespace longtail {

/// Fraction of training playlists containing each candidate.
ScoredRanking popularity_score(const InteractionMatrix& matrix, std::span<const Index> candidates);

/// Seeded uniform permutation of the candidates (independent of their input
/// order). Scores count down from the candidate count.
ScoredRanking random_score(std::span<const Index> candidates, std::uint64_t seed);

}  // namespace longtail

#include "longtail/recommenders/baselines.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace longtail {

ScoredRanking popularity_score(const InteractionMatrix& matrix, std::span<const Index> candidates) {
    const double m = static_cast<double>(matrix.num_playlists());
    std::vector<double> scores(candidates.size(), 0.0);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Index t = candidates[i];
        if (t >= matrix.num_tracks()) {
            throw std::out_of_range("candidate track " + std::to_string(t) + " outside training track space");
        }
        if (m > 0.0) scores[i] = static_cast<double>(matrix.column_nnz(t)) / m;
    }
    return make_ranking(candidates, scores);
}

ScoredRanking random_score(std::span<const Index> candidates, std::uint64_t seed) {
    std::vector<Index> order(candidates.begin(), candidates.end());
    std::sort(order.begin(), order.end());
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<double> scores(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) scores[i] = static_cast<double>(order.size() - i);
    return make_ranking(order, scores);
}

}  // namespace longtail

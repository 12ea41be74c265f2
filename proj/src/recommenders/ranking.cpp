#include "longtail/recommenders/ranking.hpp"

#include <algorithm>
#include <stdexcept>

namespace longtail {

std::vector<Index> ScoredRanking::order() const {
    std::vector<Index> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.track);
    return out;
}

ScoredRanking make_ranking(std::span<const Index> candidates, std::span<const double> scores) {
    if (candidates.size() != scores.size()) throw std::invalid_argument("make_ranking: length mismatch");
    std::vector<Index> seen(candidates.begin(), candidates.end());
    std::sort(seen.begin(), seen.end());
    if (const auto dup = std::adjacent_find(seen.begin(), seen.end()); dup != seen.end()) {
        throw std::invalid_argument("make_ranking: duplicate candidate " + std::to_string(*dup));
    }
    ScoredRanking r;
    r.entries.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) r.entries.push_back({candidates[i], scores[i]});
    std::sort(r.entries.begin(), r.entries.end(), [](const RankedTrack& a, const RankedTrack& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.track < b.track;
    });
    return r;
}

}  // namespace longtail

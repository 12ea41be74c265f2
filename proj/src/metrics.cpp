#include "longtail/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "longtail/error.hpp"

namespace longtail::metrics {

GroundTruth::GroundTruth(std::vector<Index> items) : relevant(std::move(items)) {
    std::sort(relevant.begin(), relevant.end());
    relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());
}

bool GroundTruth::contains(Index i) const { return std::binary_search(relevant.begin(), relevant.end(), i); }

namespace {

void require_truth(const GroundTruth& truth) {
    if (truth.relevant.empty()) throw DataError("metric undefined for an empty relevant set");
}

}  // namespace

double ndcg(std::span<const Index> order, const GroundTruth& truth) {
    require_truth(truth);
    double dcg = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (truth.contains(order[i])) dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    }
    const std::size_t ideal_hits = std::min(truth.size(), order.size());
    double idcg = 0.0;
    for (std::size_t i = 0; i < ideal_hits; ++i) idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    return idcg > 0.0 ? dcg / idcg : 0.0;
}

double r_precision(std::span<const Index> order, const GroundTruth& truth) {
    require_truth(truth);
    const std::size_t r = truth.size();
    const std::size_t top = std::min(r, order.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < top; ++i) hits += truth.contains(order[i]) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(r);
}

double precision_at_1(std::span<const Index> order, const GroundTruth& truth) {
    if (order.empty()) throw DataError("precision@1 undefined for an empty ranking");
    require_truth(truth);
    return truth.contains(order.front()) ? 1.0 : 0.0;
}

MetricSet evaluate(std::span<const Index> order, const GroundTruth& truth) {
    return {ndcg(order, truth), r_precision(order, truth), precision_at_1(order, truth)};
}

ArtistLevel artist_level(std::span<const Index> track_order, const GroundTruth& truth,
                         std::span<const Index> track_artist) {
    auto artist_of = [&](Index t) {
        if (t >= track_artist.size() || track_artist[t] == Catalog::npos) {
            throw DataError("no artist for track " + std::to_string(t));
        }
        return track_artist[t];
    };
    ArtistLevel out;
    std::unordered_set<Index> seen;
    for (Index t : track_order) {
        const Index a = artist_of(t);
        if (seen.insert(a).second) out.order.push_back(a);
    }
    std::vector<Index> relevant;
    relevant.reserve(truth.size());
    for (Index t : truth.relevant) relevant.push_back(artist_of(t));
    out.truth = GroundTruth(std::move(relevant));
    return out;
}

}  // namespace longtail::metrics

#include "longtail/recommenders/iin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "longtail/log.hpp"

namespace longtail {

namespace {

void check_tracks(std::span<const Index> idx, std::size_t n, const char* what) {
    for (Index t : idx) {
        if (t >= n) {
            throw std::out_of_range(std::string(what) + " track " + std::to_string(t) +
                                    " outside training track space of " + std::to_string(n));
        }
    }
}

}  // namespace

ItemItemModel::ItemItemModel(InteractionMatrix train)
    : train_(std::move(train)), sq_norms_(train_.num_tracks(), 0.0) {
    for (Index t = 0; t < train_.num_tracks(); ++t) {
        double s = 0.0;
        for (double v : train_.column(t).values) s += v * v;
        sq_norms_[t] = s;
    }
}

namespace {

// Taking one square root of the product keeps cos(x, x) exactly 1.
double cosine(double dot, double sq_a, double sq_b) { return dot / std::sqrt(sq_a * sq_b); }

}  // namespace

double ItemItemModel::similarity(Index a, Index b) const {
    if (sq_norms_.at(a) == 0.0 || sq_norms_.at(b) == 0.0) return 0.0;
    const SparseView ca = train_.column(a);
    const SparseView cb = train_.column(b);
    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < ca.size() && j < cb.size()) {
        if (ca.indices[i] < cb.indices[j]) {
            ++i;
        } else if (cb.indices[j] < ca.indices[i]) {
            ++j;
        } else {
            dot += ca.values[i++] * cb.values[j++];
        }
    }
    return cosine(dot, sq_norms_[a], sq_norms_[b]);
}

ScoredRanking ItemItemModel::score(const SparseVector& query, std::span<const Index> candidates) const {
    const std::size_t n = train_.num_tracks();
    check_tracks(query.indices, n, "query");
    check_tracks(candidates, n, "candidate");

    std::vector<double> scores(candidates.size(), 0.0);
    if (query.empty()) {
        log().debug("item-item: empty query, falling back to tie-break order");
        auto r = make_ranking(candidates, scores);
        r.fallback_order = true;
        return r;
    }

    constexpr std::size_t kNotCandidate = static_cast<std::size_t>(-1);
    std::vector<std::size_t> slot(n, kNotCandidate);
    for (std::size_t i = 0; i < candidates.size(); ++i) slot[candidates[i]] = i;

    // For each query track, the dot products with every co-occurring track
    // are expanded through the playlists that contain it.
    std::vector<double> dot(n, 0.0);
    std::vector<Index> touched;
    for (Index q : query.indices) {
        if (sq_norms_[q] == 0.0) continue;
        const SparseView col = train_.column(q);
        for (std::size_t k = 0; k < col.size(); ++k) {
            const SparseView r = train_.row(col.indices[k]);
            for (std::size_t j = 0; j < r.size(); ++j) {
                const Index t = r.indices[j];
                if (dot[t] == 0.0) touched.push_back(t);
                dot[t] += col.values[k] * r.values[j];
            }
        }
        for (Index t : touched) {
            if (slot[t] != kNotCandidate) scores[slot[t]] += cosine(dot[t], sq_norms_[t], sq_norms_[q]);
            dot[t] = 0.0;
        }
        touched.clear();
    }
    return make_ranking(candidates, scores);
}

ScoredRanking iin_score(const InteractionMatrix& matrix, const SparseVector& query,
                        std::span<const Index> candidates) {
    return ItemItemModel(matrix).score(query, candidates);
}

}  // namespace longtail

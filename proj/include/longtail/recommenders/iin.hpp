#pragma once

#include <span>
#include <vector>

#include "longtail/interaction_matrix.hpp"
#include "longtail/recommenders/ranking.hpp"

namespace longtail {

/// Item-item neighborhood scorer.
///
/// For playlist p and candidate t, s_t = sum over t' in N(p) of
/// cos(x_t, x_t'), where x_t is column t of the training matrix and N(p) the
/// nonzero tracks of the query. Columns with zero norm contribute 0.
class ItemItemModel {
public:
    explicit ItemItemModel(InteractionMatrix train);

    const InteractionMatrix& matrix() const noexcept { return train_; }
    /// Squared Euclidean norm of every training column.
    std::span<const double> column_sq_norms() const noexcept { return sq_norms_; }

    /// Cosine similarity of two training columns (0 if either is empty).
    double similarity(Index a, Index b) const;

    /// Throws std::out_of_range for indices outside the training track space.
    /// An empty query yields all-zero scores with fallback_order set.
    ScoredRanking score(const SparseVector& query, std::span<const Index> candidates) const;

private:
    InteractionMatrix train_;
    std::vector<double> sq_norms_;
};

ScoredRanking iin_score(const InteractionMatrix& matrix, const SparseVector& query,
                        std::span<const Index> candidates);

}  // namespace longtail

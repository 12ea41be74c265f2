#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace longtail {

using Index = std::uint32_t;

/// Read-only view of one row or column: parallel index/value arrays,
/// indices strictly increasing.
struct SparseView {
    std::span<const Index> indices;
    std::span<const double> values;

    std::size_t size() const noexcept { return indices.size(); }
    bool empty() const noexcept { return indices.empty(); }
};

/// Owning sparse vector (e.g. a query playlist over the track space).
struct SparseVector {
    std::vector<Index> indices;
    std::vector<double> values;

    SparseVector() = default;
    SparseVector(std::vector<Index> idx, std::vector<double> vals);
    /// Binary vector with rating 1.0 at each (deduplicated) index.
    static SparseVector ones(std::vector<Index> idx);

    SparseView view() const noexcept { return {indices, values}; }
    std::size_t size() const noexcept { return indices.size(); }
    bool empty() const noexcept { return indices.empty(); }
};

struct Triplet {
    Index row;
    Index col;
    double value;

    friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Sparse m x n playlist-track matrix with both CSR and CSC layouts.
///
/// Stored ratings are strictly positive, (row, col) pairs are unique and
/// both layouts hold the same triples. Immutable once built.
class InteractionMatrix {
public:
    InteractionMatrix() = default;

    /// Throws DataError on out-of-range indices, non-positive or non-finite
    /// ratings, or duplicate pairs.
    static InteractionMatrix from_triplets(std::size_t rows, std::size_t cols,
                                           std::vector<Triplet> triplets);

    std::size_t num_playlists() const noexcept { return rows_; }
    std::size_t num_tracks() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return row_idx_.size(); }

    /// Throws std::out_of_range for p >= num_playlists().
    SparseView row(Index p) const;
    /// Throws std::out_of_range for t >= num_tracks().
    SparseView column(Index t) const;

    std::size_t row_nnz(Index p) const { return row(p).size(); }
    std::size_t column_nnz(Index t) const { return column(t).size(); }

    /// Rating at (p, t), 0.0 when absent.
    double at(Index p, Index t) const;

    /// All stored triples in row-major order.
    std::vector<Triplet> triplets() const;

    /// New matrix made of the given rows in the given order (row i of the
    /// result is row rows[i] of this matrix), over the same track space.
    InteractionMatrix select_rows(std::span<const Index> rows) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    // CSR
    std::vector<std::size_t> row_ptr_{0};
    std::vector<Index> col_of_;
    std::vector<double> row_vals_;
    // CSC
    std::vector<std::size_t> col_ptr_{0};
    std::vector<Index> row_idx_;
    std::vector<double> col_vals_;
};

/// 1 - nnz / (m * n). Throws DataError when m * n == 0.
double sparsity(const InteractionMatrix& matrix);

/// Bidirectional id <-> index maps plus track ownership.
class Catalog {
public:
    static constexpr Index npos = static_cast<Index>(-1);

    Catalog() = default;
    Catalog(std::vector<std::string> playlist_ids, std::vector<std::string> track_ids,
            std::vector<std::string> artist_ids, std::vector<Index> track_artist);

    const std::vector<std::string>& playlist_ids() const noexcept { return playlist_ids_; }
    const std::vector<std::string>& track_ids() const noexcept { return track_ids_; }
    const std::vector<std::string>& artist_ids() const noexcept { return artist_ids_; }
    const std::vector<Index>& track_artist() const noexcept { return track_artist_; }

    std::size_t num_playlists() const noexcept { return playlist_ids_.size(); }
    std::size_t num_tracks() const noexcept { return track_ids_.size(); }
    std::size_t num_artists() const noexcept { return artist_ids_.size(); }

    /// npos when unknown.
    Index playlist_index(const std::string& id) const;
    Index track_index(const std::string& id) const;
    Index artist_index(const std::string& id) const;

    Index artist_of(Index track) const { return track_artist_.at(track); }

private:
    std::vector<std::string> playlist_ids_;
    std::vector<std::string> track_ids_;
    std::vector<std::string> artist_ids_;
    std::vector<Index> track_artist_;
    std::unordered_map<std::string, Index> playlist_lookup_;
    std::unordered_map<std::string, Index> track_lookup_;
    std::unordered_map<std::string, Index> artist_lookup_;
};

struct Interaction {
    std::string playlist_id;
    std::string track_id;
};

struct BuiltMatrix {
    InteractionMatrix matrix;
    Catalog catalog;
};

using TrackArtistMap = std::unordered_map<std::string, std::string>;

/// Binary implicit-feedback matrix from (playlist, track) pairs.
/// Duplicates collapse to a single 1.0; indices follow sorted external ids.
/// Every track is its own artist.
BuiltMatrix build_matrix(std::span<const Interaction> interactions);

/// As above, with explicit track ownership. `extra_playlists` adds playlists
/// that may have no tracks. Throws DataError if a track has no artist.
BuiltMatrix build_matrix(std::span<const Interaction> interactions,
                         const TrackArtistMap& track_artist,
                         std::span<const std::string> extra_playlists = {});

}  // namespace longtail

#include "longtail/interaction_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "longtail/error.hpp"

namespace longtail {

SparseVector::SparseVector(std::vector<Index> idx, std::vector<double> vals) {
    if (idx.size() != vals.size()) {
        throw std::invalid_argument("SparseVector: index/value length mismatch");
    }
    std::vector<std::size_t> order(idx.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return idx[a] < idx[b]; });
    indices.reserve(idx.size());
    values.reserve(idx.size());
    for (std::size_t k : order) {
        if (!indices.empty() && indices.back() == idx[k]) {
            throw std::invalid_argument("SparseVector: duplicate index " + std::to_string(idx[k]));
        }
        indices.push_back(idx[k]);
        values.push_back(vals[k]);
    }
}

SparseVector SparseVector::ones(std::vector<Index> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    SparseVector v;
    v.values.assign(idx.size(), 1.0);
    v.indices = std::move(idx);
    return v;
}

InteractionMatrix InteractionMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                                   std::vector<Triplet> triplets) {
    for (const auto& e : triplets) {
        if (e.row >= rows || e.col >= cols) {
            throw DataError("interaction (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                            ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
        }
        if (!(e.value > 0.0) || !std::isfinite(e.value)) {
            throw DataError("interaction ratings must be finite and strictly positive");
        }
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (std::size_t k = 1; k < triplets.size(); ++k) {
        if (triplets[k].row == triplets[k - 1].row && triplets[k].col == triplets[k - 1].col) {
            throw DataError("duplicate interaction (" + std::to_string(triplets[k].row) + ", " +
                            std::to_string(triplets[k].col) + ")");
        }
    }

    InteractionMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    const std::size_t nnz = triplets.size();

    m.row_ptr_.assign(rows + 1, 0);
    m.col_of_.resize(nnz);
    m.row_vals_.resize(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
        ++m.row_ptr_[triplets[k].row + 1];
        m.col_of_[k] = triplets[k].col;
        m.row_vals_[k] = triplets[k].value;
    }
    std::partial_sum(m.row_ptr_.begin(), m.row_ptr_.end(), m.row_ptr_.begin());

    // Counting sort into CSC; row-major input keeps rows ascending per column.
    m.col_ptr_.assign(cols + 1, 0);
    for (const auto& e : triplets) ++m.col_ptr_[e.col + 1];
    std::partial_sum(m.col_ptr_.begin(), m.col_ptr_.end(), m.col_ptr_.begin());
    m.row_idx_.resize(nnz);
    m.col_vals_.resize(nnz);
    std::vector<std::size_t> cursor(m.col_ptr_.begin(), m.col_ptr_.end() - 1);
    for (const auto& e : triplets) {
        const std::size_t slot = cursor[e.col]++;
        m.row_idx_[slot] = e.row;
        m.col_vals_[slot] = e.value;
    }
    return m;
}

SparseView InteractionMatrix::row(Index p) const {
    if (p >= rows_) throw std::out_of_range("playlist index " + std::to_string(p) + " out of range");
    const std::size_t b = row_ptr_[p], e = row_ptr_[p + 1];
    return {std::span<const Index>(col_of_).subspan(b, e - b),
            std::span<const double>(row_vals_).subspan(b, e - b)};
}

SparseView InteractionMatrix::column(Index t) const {
    if (t >= cols_) throw std::out_of_range("track index " + std::to_string(t) + " out of range");
    const std::size_t b = col_ptr_[t], e = col_ptr_[t + 1];
    return {std::span<const Index>(row_idx_).subspan(b, e - b),
            std::span<const double>(col_vals_).subspan(b, e - b)};
}

double InteractionMatrix::at(Index p, Index t) const {
    const SparseView r = row(p);
    if (t >= cols_) throw std::out_of_range("track index " + std::to_string(t) + " out of range");
    const auto it = std::lower_bound(r.indices.begin(), r.indices.end(), t);
    if (it == r.indices.end() || *it != t) return 0.0;
    return r.values[static_cast<std::size_t>(it - r.indices.begin())];
}

std::vector<Triplet> InteractionMatrix::triplets() const {
    std::vector<Triplet> out;
    out.reserve(nnz());
    for (Index p = 0; p < rows_; ++p) {
        const SparseView r = row(p);
        for (std::size_t k = 0; k < r.size(); ++k) out.push_back({p, r.indices[k], r.values[k]});
    }
    return out;
}

InteractionMatrix InteractionMatrix::select_rows(std::span<const Index> rows) const {
    std::vector<Triplet> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SparseView r = row(rows[i]);
        for (std::size_t k = 0; k < r.size(); ++k) {
            out.push_back({static_cast<Index>(i), r.indices[k], r.values[k]});
        }
    }
    return from_triplets(rows.size(), cols_, std::move(out));
}

double sparsity(const InteractionMatrix& matrix) {
    const double cells = static_cast<double>(matrix.num_playlists()) * static_cast<double>(matrix.num_tracks());
    if (cells == 0.0) throw DataError("sparsity undefined for a matrix with zero rows or columns");
    return 1.0 - static_cast<double>(matrix.nnz()) / cells;
}

namespace {

std::unordered_map<std::string, Index> make_lookup(const std::vector<std::string>& ids, const char* what) {
    std::unordered_map<std::string, Index> lookup;
    lookup.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!lookup.emplace(ids[i], static_cast<Index>(i)).second) {
            throw DataError(std::string("duplicate ") + what + " id '" + ids[i] + "'");
        }
    }
    return lookup;
}

Index find_or_npos(const std::unordered_map<std::string, Index>& lookup, const std::string& id) {
    const auto it = lookup.find(id);
    return it == lookup.end() ? Catalog::npos : it->second;
}

}  // namespace

Catalog::Catalog(std::vector<std::string> playlist_ids, std::vector<std::string> track_ids,
                 std::vector<std::string> artist_ids, std::vector<Index> track_artist)
    : playlist_ids_(std::move(playlist_ids)),
      track_ids_(std::move(track_ids)),
      artist_ids_(std::move(artist_ids)),
      track_artist_(std::move(track_artist)) {
    if (track_artist_.size() != track_ids_.size()) {
        throw DataError("catalog: every track needs exactly one artist");
    }
    for (Index a : track_artist_) {
        if (a >= artist_ids_.size()) throw DataError("catalog: track owned by unknown artist index");
    }
    playlist_lookup_ = make_lookup(playlist_ids_, "playlist");
    track_lookup_ = make_lookup(track_ids_, "track");
    artist_lookup_ = make_lookup(artist_ids_, "artist");
}

Index Catalog::playlist_index(const std::string& id) const { return find_or_npos(playlist_lookup_, id); }
Index Catalog::track_index(const std::string& id) const { return find_or_npos(track_lookup_, id); }
Index Catalog::artist_index(const std::string& id) const { return find_or_npos(artist_lookup_, id); }

BuiltMatrix build_matrix(std::span<const Interaction> interactions) {
    TrackArtistMap self_owned;
    for (const auto& it : interactions) self_owned.emplace(it.track_id, it.track_id);
    return build_matrix(interactions, self_owned);
}

BuiltMatrix build_matrix(std::span<const Interaction> interactions, const TrackArtistMap& track_artist,
                         std::span<const std::string> extra_playlists) {
    std::set<std::string> playlists(extra_playlists.begin(), extra_playlists.end());
    std::set<std::string> tracks;
    for (const auto& it : interactions) {
        playlists.insert(it.playlist_id);
        tracks.insert(it.track_id);
    }

    std::vector<std::string> playlist_ids(playlists.begin(), playlists.end());
    std::vector<std::string> track_ids(tracks.begin(), tracks.end());

    std::set<std::string> artists;
    for (const auto& t : track_ids) {
        const auto owner = track_artist.find(t);
        if (owner == track_artist.end()) throw DataError("track '" + t + "' has no artist");
        artists.insert(owner->second);
    }
    std::vector<std::string> artist_ids(artists.begin(), artists.end());
    std::map<std::string, Index> artist_pos;
    for (std::size_t i = 0; i < artist_ids.size(); ++i) artist_pos.emplace(artist_ids[i], static_cast<Index>(i));
    std::vector<Index> owner_of(track_ids.size());
    for (std::size_t i = 0; i < track_ids.size(); ++i) owner_of[i] = artist_pos.at(track_artist.at(track_ids[i]));

    Catalog catalog(std::move(playlist_ids), std::move(track_ids), std::move(artist_ids), std::move(owner_of));

    std::vector<Triplet> entries;
    entries.reserve(interactions.size());
    for (const auto& it : interactions) {
        entries.push_back({catalog.playlist_index(it.playlist_id), catalog.track_index(it.track_id), 1.0});
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const Triplet& a, const Triplet& b) { return a.row == b.row && a.col == b.col; }),
                  entries.end());

    auto matrix = InteractionMatrix::from_triplets(catalog.num_playlists(), catalog.num_tracks(), std::move(entries));
    return {std::move(matrix), std::move(catalog)};
}

}  // namespace longtail

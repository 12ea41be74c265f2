#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "longtail/geo.hpp"
#include "longtail/ingest.hpp"

namespace longtail::synth {

/// Generative parameters for a planted-structure fixture.
///
/// Non-local tracks follow a Zipf popularity law. Each city owns local artists
/// grouped into clusters; a local playlist belongs to one cluster and mixes
/// that cluster's local tracks with a few cluster-specific "signature"
/// non-local tracks and popular background tracks. Events place local artists
/// inside their city radius and everyone else elsewhere (plus touring
/// artists that visit cities without qualifying as local).
struct SynthParams {
    std::size_t playlists = 800;
    std::size_t tracks = 1200;
    std::size_t cities = 2;  // at most 8
    std::size_t local_artists_per_city = 20;
    std::size_t tracks_per_artist = 5;
    std::size_t clusters_per_city = 10;
    std::size_t signature_tracks_per_cluster = 6;
    /// Target sparsity of each city's local-track column block.
    double local_sparsity = 0.996;
    /// Mean local tracks per local playlist (sets how many local playlists exist).
    double local_tracks_per_playlist = 3.0;
    std::size_t playlist_length = 12;
    double zipf_exponent = 1.0;
    std::uint64_t seed = 1;

    /// Throws DataError on sizes that cannot produce a valid fixture.
    void validate() const;
    nlohmann::json to_json() const;
};

struct SynthDataset {
    std::vector<ingest::PlaylistRecord> playlists;
    std::vector<geo::EventRecord> events;
    std::vector<geo::CityCenter> cities;
    /// Planted local artists per city (same order as `cities`).
    std::vector<std::vector<std::string>> local_artists;
};

SynthDataset generate(const SynthParams& params);

/// Writes playlists.jsonl, events.csv, cities.csv and synth_params.json.
void write_dataset(const std::filesystem::path& dir, const SynthDataset& data, const SynthParams& params);

}  // namespace longtail::synth

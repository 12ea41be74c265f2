#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "longtail/geo.hpp"
#include "longtail/interaction_matrix.hpp"

namespace longtail::ingest {

struct PlaylistTrack {
    std::string track_id;
    std::string artist_id;
};

struct PlaylistRecord {
    std::string playlist_id;
    std::vector<PlaylistTrack> tracks;
};

// Readers take a display name for error messages. Lines are 1-based; blank
// lines are skipped but still counted.

/// JSON Lines: {"playlist_id": "...", "tracks": [{"track_id": "...", "artist_id": "..."}]}
std::vector<PlaylistRecord> read_playlists(std::istream& in, const std::string& name = "<playlists>");
/// CSV with header event_id,artist_id,venue_lat,venue_lon
std::vector<geo::EventRecord> read_events(std::istream& in, const std::string& name = "<events>");
/// CSV with header name,lat,lon[,radius_miles]
std::vector<geo::CityCenter> read_cities(std::istream& in, const std::string& name = "<cities>");

void write_playlists(std::ostream& out, const std::vector<PlaylistRecord>& playlists);
void write_events(std::ostream& out, const std::vector<geo::EventRecord>& events);
void write_cities(std::ostream& out, const std::vector<geo::CityCenter>& cities);

struct Dataset {
    InteractionMatrix matrix;
    Catalog catalog;
    geo::LocalityTable locality;
    /// Events dropped because their artist owns no catalog track.
    std::size_t unknown_artist_events = 0;
};

/// Matrix over all playlists and tracks. Throws DataError when a track is
/// listed under two different artists.
Dataset assemble(const std::vector<PlaylistRecord>& playlists, const std::vector<geo::EventRecord>& events,
                 const std::vector<geo::CityCenter>& cities);

/// Throws ParseError (with line), DataError, or std::runtime_error when a
/// file cannot be opened.
Dataset load_dataset(const std::filesystem::path& playlists, const std::filesystem::path& events,
                     const std::filesystem::path& cities);

struct CitySummary {
    std::string city;
    std::size_t local_playlists = 0;
    std::size_t local_artists = 0;
    std::size_t local_tracks = 0;
    /// Sparsity of the local-track column block; 1.0 when the block is empty.
    double sparsity = 1.0;
    bool sparsity_defined = false;
};

/// Playlists with at least one local track of the city, sorted.
std::vector<Index> local_playlists(const InteractionMatrix& matrix, const geo::CityLocality& city);

/// Throws UnknownEntity for a city missing from the table.
CitySummary summarize(const InteractionMatrix& matrix, const Catalog& catalog, const geo::LocalityTable& locality,
                      const std::string& city);

}  // namespace longtail::ingest

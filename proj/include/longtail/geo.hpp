#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "longtail/interaction_matrix.hpp"

namespace longtail::geo {

inline constexpr double kEarthRadiusMiles = 3958.7613;
inline constexpr double kDefaultRadiusMiles = 10.0;

struct LatLon {
    double lat = 0.0;
    double lon = 0.0;
};

struct EventRecord {
    std::string event_id;
    std::string artist_id;
    LatLon venue;
};

struct CityCenter {
    std::string name;
    LatLon center;
    double radius_miles = kDefaultRadiusMiles;
};

/// Throws DataError when lat is outside [-90, 90] or lon outside [-180, 180].
void validate(const LatLon& p);

/// Haversine distance on a sphere of radius kEarthRadiusMiles.
double great_circle_miles(const LatLon& a, const LatLon& b);

/// Artists with at least `min_events` distinct events of which at least
/// `threshold` fall within the city radius. Both bounds are inclusive.
/// Events are deduplicated per (artist, event_id).
std::set<std::string> classify_local(std::span<const EventRecord> events, const CityCenter& city,
                                     std::size_t min_events = 2, double threshold = 0.8);

struct CityLocality {
    CityCenter city;
    std::set<std::string> artists;
    /// Sorted catalog indices of tracks owned by a local artist.
    std::vector<Index> tracks;
};

class LocalityTable {
public:
    LocalityTable() = default;
    explicit LocalityTable(std::vector<CityLocality> cities);

    /// Throws UnknownEntity.
    const CityLocality& city(const std::string& name) const;
    bool contains(const std::string& name) const { return by_name_.count(name) != 0; }
    /// Input order of the cities.
    const std::vector<CityLocality>& cities() const noexcept { return cities_; }

private:
    std::vector<CityLocality> cities_;
    std::map<std::string, std::size_t> by_name_;
};

LocalityTable build_locality_table(std::span<const EventRecord> events, std::span<const CityCenter> cities,
                                   const Catalog& catalog);

}  // namespace longtail::geo

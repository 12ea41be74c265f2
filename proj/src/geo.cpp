#include "longtail/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "longtail/error.hpp"

namespace longtail::geo {

void validate(const LatLon& p) {
    if (!(p.lat >= -90.0 && p.lat <= 90.0) || !(p.lon >= -180.0 && p.lon <= 180.0)) {
        throw DataError("coordinate out of range: (" + std::to_string(p.lat) + ", " + std::to_string(p.lon) + ")");
    }
}

double great_circle_miles(const LatLon& a, const LatLon& b) {
    validate(a);
    validate(b);
    constexpr double deg = std::numbers::pi / 180.0;
    const double dlat = (b.lat - a.lat) * deg;
    const double dlon = (b.lon - a.lon) * deg;
    const double s1 = std::sin(dlat / 2.0);
    const double s2 = std::sin(dlon / 2.0);
    double h = s1 * s1 + std::cos(a.lat * deg) * std::cos(b.lat * deg) * s2 * s2;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusMiles * std::asin(std::sqrt(h));
}

std::set<std::string> classify_local(std::span<const EventRecord> events, const CityCenter& city,
                                     std::size_t min_events, double threshold) {
    if (!(city.radius_miles > 0.0)) throw DataError("city '" + city.name + "' needs a positive radius");
    validate(city.center);

    // artist -> event_id -> venue; on conflicting duplicates keep the smallest
    // (lat, lon) so the result does not depend on record order.
    std::map<std::string, std::map<std::string, LatLon>> by_artist;
    for (const auto& e : events) {
        validate(e.venue);
        auto& slot = by_artist[e.artist_id];
        auto [it, inserted] = slot.emplace(e.event_id, e.venue);
        if (!inserted && std::tie(e.venue.lat, e.venue.lon) < std::tie(it->second.lat, it->second.lon)) {
            it->second = e.venue;
        }
    }

    std::set<std::string> local;
    for (const auto& [artist, venues] : by_artist) {
        const std::size_t total = venues.size();
        if (total < min_events || total == 0) continue;
        std::size_t inside = 0;
        for (const auto& [id, venue] : venues) {
            if (great_circle_miles(city.center, venue) <= city.radius_miles) ++inside;
        }
        // inside / total >= threshold, compared without division
        if (static_cast<double>(inside) >= threshold * static_cast<double>(total)) local.insert(artist);
    }
    return local;
}

LocalityTable::LocalityTable(std::vector<CityLocality> cities) : cities_(std::move(cities)) {
    for (std::size_t i = 0; i < cities_.size(); ++i) {
        if (!by_name_.emplace(cities_[i].city.name, i).second) {
            throw DataError("duplicate city '" + cities_[i].city.name + "'");
        }
    }
}

const CityLocality& LocalityTable::city(const std::string& name) const {
    const auto it = by_name_.find(name);
    if (it == by_name_.end()) throw UnknownEntity("unknown city '" + name + "'");
    return cities_[it->second];
}

LocalityTable build_locality_table(std::span<const EventRecord> events, std::span<const CityCenter> cities,
                                   const Catalog& catalog) {
    std::vector<CityLocality> out;
    out.reserve(cities.size());
    for (const auto& city : cities) {
        CityLocality loc;
        loc.city = city;
        loc.artists = classify_local(events, city);
        for (Index t = 0; t < catalog.num_tracks(); ++t) {
            if (loc.artists.count(catalog.artist_ids()[catalog.artist_of(t)])) loc.tracks.push_back(t);
        }
        out.push_back(std::move(loc));
    }
    return LocalityTable(std::move(out));
}

}  // namespace longtail::geo

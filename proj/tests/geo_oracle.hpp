#pragma once

// Independent distance and locality checkers used as test oracles.

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "longtail/geo.hpp"

namespace longtail::testing {

/// Great-circle distance through the 3D chord: angle = 2 asin(|u - v| / 2).
inline double chord_miles(geo::LatLon a, geo::LatLon b) {
    const double d = std::numbers::pi / 180.0;
    auto unit = [&](geo::LatLon p) {
        return std::array<double, 3>{std::cos(p.lat * d) * std::cos(p.lon * d),
                                     std::cos(p.lat * d) * std::sin(p.lon * d), std::sin(p.lat * d)};
    };
    const auto u = unit(a);
    const auto v = unit(b);
    const double chord = std::sqrt((u[0] - v[0]) * (u[0] - v[0]) + (u[1] - v[1]) * (u[1] - v[1]) +
                                   (u[2] - v[2]) * (u[2] - v[2]));
    return 2.0 * std::asin(std::min(1.0, chord / 2.0)) * 3958.7613;
}

/// Point at `miles` due north (positive) or south of `p`.
inline geo::LatLon offset_north(geo::LatLon p, double miles) {
    return {p.lat + miles / 3958.7613 * 180.0 / std::numbers::pi, p.lon};
}

/// Brute-force rule: distinct events >= 2 and 5 * inside >= 4 * total, in
/// integers.
inline std::set<std::string> exhaustive_local(const std::vector<geo::EventRecord>& events, const geo::CityCenter& c) {
    std::map<std::string, std::map<std::string, geo::LatLon>> by_artist;
    for (const auto& e : events) {
        auto& slot = by_artist[e.artist_id];
        auto it = slot.find(e.event_id);
        if (it == slot.end()) {
            slot[e.event_id] = e.venue;
        } else if (e.venue.lat < it->second.lat || (e.venue.lat == it->second.lat && e.venue.lon < it->second.lon)) {
            it->second = e.venue;
        }
    }
    std::set<std::string> out;
    for (const auto& [artist, venues] : by_artist) {
        long total = static_cast<long>(venues.size());
        long inside = 0;
        for (const auto& [id, v] : venues) inside += chord_miles(c.center, v) <= c.radius_miles ? 1 : 0;
        if (total >= 2 && 5 * inside >= 4 * total) out.insert(artist);
    }
    return out;
}

}  // namespace longtail::testing

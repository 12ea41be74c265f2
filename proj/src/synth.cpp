#include "longtail/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

#include "longtail/error.hpp"

namespace longtail::synth {

namespace {

struct NamedCenter {
    const char* name;
    double lat;
    double lon;
};

constexpr NamedCenter kCenters[] = {
    {"Atlanta", 33.7490, -84.3880},  {"Berkeley", 37.8716, -122.2727}, {"Boulder", 40.0150, -105.2705},
    {"Brooklyn", 40.6782, -73.9442}, {"Chicago", 41.8781, -87.6298},   {"Los Angeles", 34.0522, -118.2437},
    {"Nashville", 36.1627, -86.7816}, {"Philadelphia", 39.9526, -75.1652},
};

constexpr double kMilesPerDegreeLat = 69.0;

struct Counts {
    std::size_t local_per_city;
    std::size_t nonlocal;
    std::size_t signature_total;
    std::size_t background;
    std::size_t local_entries_per_city;
    std::size_t local_playlists_per_city;
};

Counts derive(const SynthParams& p) {
    Counts c{};
    c.local_per_city = p.local_artists_per_city * p.tracks_per_artist;
    const std::size_t total_local = p.cities * c.local_per_city;
    c.signature_total = p.cities * p.clusters_per_city * p.signature_tracks_per_cluster;
    if (p.tracks <= total_local + c.signature_total) {
        throw DataError("synth: tracks must exceed local plus signature tracks (" +
                        std::to_string(total_local + c.signature_total) + ")");
    }
    c.nonlocal = p.tracks - total_local;
    c.background = c.nonlocal - c.signature_total;
    if (c.background < 2 * p.playlist_length) {
        throw DataError("synth: background pool too small for the playlist length");
    }
    const double density = 1.0 - p.local_sparsity;
    c.local_entries_per_city = static_cast<std::size_t>(
        std::llround(density * static_cast<double>(p.playlists) * static_cast<double>(c.local_per_city)));
    if (c.local_entries_per_city < c.local_per_city) {
        throw DataError("synth: local_sparsity too high; every local track needs at least one playlist");
    }
    c.local_playlists_per_city = std::max<std::size_t>(
        p.clusters_per_city, static_cast<std::size_t>(std::llround(static_cast<double>(c.local_entries_per_city) /
                                                                    p.local_tracks_per_playlist)));
    if (c.local_playlists_per_city * p.cities > p.playlists) {
        throw DataError("synth: not enough playlists for the requested local density");
    }
    return c;
}

geo::LatLon offset(const geo::LatLon& from, double miles, double bearing) {
    const double dlat = miles * std::cos(bearing) / kMilesPerDegreeLat;
    const double dlon = miles * std::sin(bearing) / (kMilesPerDegreeLat * std::cos(from.lat * std::numbers::pi / 180.0));
    return {from.lat + dlat, from.lon + dlon};
}

}  // namespace

void SynthParams::validate() const {
    if (playlists == 0) throw DataError("synth: playlists must be positive");
    if (tracks == 0) throw DataError("synth: tracks must be positive");
    if (cities == 0 || cities > std::size(kCenters)) throw DataError("synth: cities must be between 1 and 8");
    if (local_artists_per_city == 0 || tracks_per_artist == 0) throw DataError("synth: artist sizes must be positive");
    if (clusters_per_city == 0 || clusters_per_city > local_artists_per_city) {
        throw DataError("synth: clusters_per_city must be in [1, local_artists_per_city]");
    }
    if (signature_tracks_per_cluster < 2) throw DataError("synth: need at least 2 signature tracks per cluster");
    if (!(local_sparsity > 0.0 && local_sparsity < 1.0)) throw DataError("synth: local_sparsity must be in (0, 1)");
    if (!(local_tracks_per_playlist >= 1.0)) throw DataError("synth: local_tracks_per_playlist must be >= 1");
    if (playlist_length == 0) throw DataError("synth: playlist_length must be positive");
    if (!(zipf_exponent >= 0.0)) throw DataError("synth: zipf_exponent must be non-negative");
    derive(*this);
}

nlohmann::json SynthParams::to_json() const {
    return {{"playlists", playlists},
            {"tracks", tracks},
            {"cities", cities},
            {"local_artists_per_city", local_artists_per_city},
            {"tracks_per_artist", tracks_per_artist},
            {"clusters_per_city", clusters_per_city},
            {"signature_tracks_per_cluster", signature_tracks_per_cluster},
            {"local_sparsity", local_sparsity},
            {"local_tracks_per_playlist", local_tracks_per_playlist},
            {"playlist_length", playlist_length},
            {"zipf_exponent", zipf_exponent},
            {"seed", seed}};
}

SynthDataset generate(const SynthParams& p) {
    p.validate();
    const Counts cnt = derive(p);
    std::mt19937_64 rng(p.seed);
    auto uniform = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

    // Track layout: [background | signature | local city 0 | local city 1 ...].
    auto track_name = [](std::size_t t) { return fmt::format("t{:05d}", t); };
    const std::size_t sig_begin = cnt.background;
    const std::size_t local_begin = cnt.nonlocal;
    auto signature_track = [&](std::size_t city, std::size_t cluster, std::size_t j) {
        return sig_begin + (city * p.clusters_per_city + cluster) * p.signature_tracks_per_cluster + j;
    };
    auto local_track = [&](std::size_t city, std::size_t artist, std::size_t j) {
        return local_begin + city * cnt.local_per_city + artist * p.tracks_per_artist + j;
    };

    // Artists: non-local tracks grouped consecutively, local artists after.
    const std::size_t nonlocal_artists = (cnt.nonlocal + p.tracks_per_artist - 1) / p.tracks_per_artist;
    auto artist_name = [](std::size_t a) { return fmt::format("a{:04d}", a); };
    auto artist_of = [&](std::size_t t) {
        if (t < local_begin) return t / p.tracks_per_artist;
        return nonlocal_artists + (t - local_begin) / p.tracks_per_artist;
    };

    std::vector<double> zipf(cnt.background);
    for (std::size_t r = 0; r < cnt.background; ++r) zipf[r] = 1.0 / std::pow(static_cast<double>(r + 1), p.zipf_exponent);
    std::discrete_distribution<std::size_t> background(zipf.begin(), zipf.end());

    std::vector<std::set<std::size_t>> lists;
    std::vector<std::pair<std::size_t, std::size_t>> owner;  // (city, cluster) or (npos, npos) for non-local
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    auto playlist_length = [&] {
        const std::size_t lo = std::max<std::size_t>(1, p.playlist_length / 2);
        const std::size_t hi = p.playlist_length + p.playlist_length / 2;
        return lo + uniform(hi - lo + 1);
    };
    auto fill_background = [&](std::set<std::size_t>& s, std::size_t target) {
        while (s.size() < target) s.insert(background(rng));
    };

    for (std::size_t c = 0; c < p.cities; ++c) {
        // Cluster k owns local artists a with a % clusters == k.
        std::vector<std::vector<std::size_t>> cluster_tracks(p.clusters_per_city);
        for (std::size_t a = 0; a < p.local_artists_per_city; ++a) {
            for (std::size_t j = 0; j < p.tracks_per_artist; ++j) {
                cluster_tracks[a % p.clusters_per_city].push_back(local_track(c, a, j));
            }
        }
        std::vector<std::vector<std::size_t>> cluster_lists(p.clusters_per_city);
        for (std::size_t i = 0; i < cnt.local_playlists_per_city; ++i) {
            cluster_lists[i % p.clusters_per_city].push_back(lists.size());
            lists.emplace_back();
            owner.emplace_back(c, i % p.clusters_per_city);
        }
        for (std::size_t k = 0; k < p.clusters_per_city; ++k) {
            const auto& tracks = cluster_tracks[k];
            const auto& members = cluster_lists[k];
            const std::size_t budget = cnt.local_entries_per_city * tracks.size() / cnt.local_per_city;
            std::size_t placed = 0;
            for (std::size_t i = 0; i < tracks.size(); ++i) {
                lists[members[i % members.size()]].insert(tracks[i]);
                ++placed;
            }
            for (std::size_t i = tracks.size(); i < members.size(); ++i) {
                lists[members[i]].insert(tracks[uniform(tracks.size())]);
                ++placed;
            }
            // Remaining budget with a within-cluster popularity skew.
            std::vector<double> w(tracks.size());
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / static_cast<double>(i + 1);
            std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
            for (std::size_t attempts = 0; placed < budget && attempts < 50 * budget; ++attempts) {
                if (lists[members[uniform(members.size())]].insert(tracks[pick(rng)]).second) ++placed;
            }
            for (std::size_t idx : members) {
                auto& s = lists[idx];
                const std::size_t sig = 2 + uniform(std::min<std::size_t>(3, p.signature_tracks_per_cluster - 1));
                std::set<std::size_t> chosen;
                while (chosen.size() < std::min(sig, p.signature_tracks_per_cluster)) {
                    chosen.insert(signature_track(c, k, uniform(p.signature_tracks_per_cluster)));
                }
                s.insert(chosen.begin(), chosen.end());
                fill_background(s, std::max(s.size() + 1, playlist_length()));
            }
        }
    }
    while (lists.size() < p.playlists) {
        lists.emplace_back();
        owner.emplace_back(kNone, kNone);
        fill_background(lists.back(), playlist_length());
    }

    // Every background and signature track must occur somewhere.
    std::vector<char> used(p.tracks, 0);
    for (const auto& s : lists) {
        for (std::size_t t : s) used[t] = 1;
    }
    std::vector<std::size_t> nonlocal_lists;
    for (std::size_t i = 0; i < lists.size(); ++i) {
        if (owner[i].first == kNone) nonlocal_lists.push_back(i);
    }
    for (std::size_t t = 0; t < sig_begin; ++t) {
        if (used[t]) continue;
        const std::size_t target = nonlocal_lists.empty() ? uniform(lists.size()) : nonlocal_lists[uniform(nonlocal_lists.size())];
        lists[target].insert(t);
    }
    for (std::size_t c = 0; c < p.cities; ++c) {
        for (std::size_t k = 0; k < p.clusters_per_city; ++k) {
            for (std::size_t j = 0; j < p.signature_tracks_per_cluster; ++j) {
                const std::size_t t = signature_track(c, k, j);
                if (used[t]) continue;
                for (std::size_t i = 0; i < lists.size(); ++i) {
                    if (owner[i] == std::make_pair(c, k)) {
                        lists[i].insert(t);
                        break;
                    }
                }
            }
        }
    }

    SynthDataset out;
    std::vector<std::size_t> order(lists.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < order.size(); ++i) {
        ingest::PlaylistRecord rec;
        rec.playlist_id = fmt::format("p{:05d}", i);
        std::vector<std::size_t> tracks(lists[order[i]].begin(), lists[order[i]].end());
        std::shuffle(tracks.begin(), tracks.end(), rng);
        for (std::size_t t : tracks) rec.tracks.push_back({track_name(t), artist_name(artist_of(t))});
        out.playlists.push_back(std::move(rec));
    }

    // Events.
    for (std::size_t c = 0; c < p.cities; ++c) {
        out.cities.push_back({kCenters[c].name, {kCenters[c].lat, kCenters[c].lon}, geo::kDefaultRadiusMiles});
    }
    std::size_t next_event = 0;
    auto add_event = [&](std::size_t artist, const geo::LatLon& where) {
        out.events.push_back({fmt::format("e{:06d}", next_event++), artist_name(artist), where});
    };
    std::uniform_real_distribution<double> bearing(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto near = [&](std::size_t city) {
        const double r = 0.7 * out.cities[city].radius_miles * std::sqrt(unit(rng));
        return offset(out.cities[city].center, r, bearing(rng));
    };
    auto far = [&] {
        for (;;) {
            const geo::LatLon cand{28.0 + 19.0 * unit(rng), -122.0 + 50.0 * unit(rng)};
            bool clear = true;
            for (const auto& center : kCenters) {
                if (geo::great_circle_miles(cand, {center.lat, center.lon}) < 40.0) clear = false;
            }
            if (clear) return cand;
        }
    };

    out.local_artists.resize(p.cities);
    for (std::size_t c = 0; c < p.cities; ++c) {
        for (std::size_t j = 0; j < p.local_artists_per_city; ++j) {
            const std::size_t a = nonlocal_artists + c * p.local_artists_per_city + j;
            out.local_artists[c].push_back(artist_name(a));
            const std::size_t first = out.events.size();
            if (j % 4 == 3) {
                // exactly 80% inside
                for (int e = 0; e < 4; ++e) add_event(a, near(c));
                add_event(a, far());
            } else {
                for (std::size_t e = 0; e < 2 + j % 3; ++e) add_event(a, near(c));
            }
            if (j % 5 == 0) out.events.push_back(out.events[first]);  // same listing from a second source
        }
    }
    for (std::size_t a = 0; a < nonlocal_artists; ++a) {
        const std::size_t c = a % p.cities;
        switch (a % 6) {
            case 0: break;
            case 1: add_event(a, near(c)); break;  // single show in town
            case 2:
                for (int e = 0; e < 3; ++e) add_event(a, near(c));
                add_event(a, far());  // 75%
                break;
            case 3:
                for (int e = 0; e < 3; ++e) add_event(a, far());
                break;
            case 4:
                for (int e = 0; e < 2; ++e) add_event(a, far());
                break;
            default:
                add_event(a, near(c));
                add_event(a, far());
                break;
        }
    }
    std::shuffle(out.events.begin(), out.events.end(), rng);
    return out;
}

void write_dataset(const std::filesystem::path& dir, const SynthDataset& data, const SynthParams& params) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream f(dir / name);
        if (!f) throw std::runtime_error("cannot write '" + (dir / name).string() + "'");
        return f;
    };
    {
        auto f = open("playlists.jsonl");
        ingest::write_playlists(f, data.playlists);
    }
    {
        auto f = open("events.csv");
        ingest::write_events(f, data.events);
    }
    {
        auto f = open("cities.csv");
        ingest::write_cities(f, data.cities);
    }
    {
        auto f = open("synth_params.json");
        nlohmann::json j = params.to_json();
        j["generator"] = "longtail synth";
        j["files"] = {"playlists.jsonl", "events.csv", "cities.csv"};
        j["local_artists"] = data.local_artists;
        f << j.dump(2) << '\n';
    }
}

}  // namespace longtail::synth

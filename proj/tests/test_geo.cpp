#include <doctest.h>

#include <algorithm>
#include <random>

#include "geo_oracle.hpp"
#include "longtail/error.hpp"
#include "longtail/geo.hpp"
#include "longtail/interaction_matrix.hpp"

using namespace longtail;
using namespace longtail::geo;
using longtail::testing::chord_miles;
using longtail::testing::exhaustive_local;
using longtail::testing::offset_north;

namespace {

const CityCenter kCity{"Atlanta", {33.749, -84.388}, 10.0};

std::vector<EventRecord> events_for(const std::string& artist, int inside, int outside, const CityCenter& c = kCity) {
    std::vector<EventRecord> out;
    for (int i = 0; i < inside; ++i) out.push_back({artist + "-in" + std::to_string(i), artist, offset_north(c.center, 1.0 + i * 0.5)});
    for (int i = 0; i < outside; ++i) out.push_back({artist + "-out" + std::to_string(i), artist, offset_north(c.center, -(30.0 + i))});
    return out;
}

}  // namespace

TEST_CASE("great_circle_miles basics") {
    CHECK(great_circle_miles({40.0, -75.0}, {40.0, -75.0}) == 0.0);
    const double nyc_phl = great_circle_miles({40.7128, -74.0060}, {39.9526, -75.1652});
    const double oracle = chord_miles({40.7128, -74.0060}, {39.9526, -75.1652});
    CHECK(std::abs(nyc_phl - oracle) / oracle < 1e-6);
    CHECK(nyc_phl == doctest::Approx(80.6).epsilon(0.01));
    CHECK_THROWS_AS(great_circle_miles({91.0, 0.0}, {0.0, 0.0}), DataError);
    CHECK_THROWS_AS(great_circle_miles({0.0, 0.0}, {0.0, -180.5}), DataError);
}

TEST_CASE("property: symmetry, positivity, triangle inequality, oracle agreement") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lat(-89.0, 89.0), lon(-180.0, 180.0);
    for (int i = 0; i < 500; ++i) {
        const LatLon a{lat(rng), lon(rng)}, b{lat(rng), lon(rng)}, c{lat(rng), lon(rng)};
        const double ab = great_circle_miles(a, b);
        CHECK(ab == great_circle_miles(b, a));
        CHECK(ab > 0.0);
        CHECK(great_circle_miles(a, c) <= ab + great_circle_miles(b, c) + 1e-9);
        CHECK(std::abs(ab - chord_miles(a, b)) <= 1e-6 * std::max(ab, 1.0));
    }
}

TEST_CASE("classify_local rule examples") {
    auto has = [](const std::set<std::string>& s, const std::string& a) { return s.count(a) == 1; };
    CHECK(has(classify_local(events_for("a", 2, 0), kCity), "a"));
    CHECK_FALSE(has(classify_local(events_for("a", 1, 0), kCity), "a"));
    CHECK_FALSE(has(classify_local(events_for("a", 3, 1), kCity), "a"));
    CHECK(has(classify_local(events_for("a", 4, 1), kCity), "a"));
    CHECK(has(classify_local(events_for("a", 8, 2), kCity), "a"));
    CHECK_FALSE(has(classify_local(events_for("a", 7, 3), kCity), "a"));
    CHECK(classify_local(std::vector<EventRecord>{}, kCity).empty());
}

TEST_CASE("duplicate listings of one event count once") {
    auto ev = events_for("a", 1, 0);
    ev.push_back(ev.front());
    CHECK(classify_local(ev, kCity).empty());
    // 4 inside + 1 outside is local; repeating the outside listing must not change that
    auto ev2 = events_for("b", 4, 1);
    ev2.push_back(ev2.back());
    ev2.push_back(ev2.back());
    CHECK(classify_local(ev2, kCity).count("b") == 1);
}

TEST_CASE("randomized fixture agrees with an exhaustive checker, order and duplicate invariant") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<EventRecord> events;
        for (int a = 0; a < 60; ++a) {
            const int total = 1 + static_cast<int>(rng() % 10);
            const int inside = static_cast<int>(rng() % (total + 1));
            auto ev = events_for("art" + std::to_string(a), inside, total - inside);
            events.insert(events.end(), ev.begin(), ev.end());
        }
        const auto want = exhaustive_local(events, kCity);
        CHECK(classify_local(events, kCity) == want);
        auto shuffled = events;
        for (std::size_t i = 0; i < 30; ++i) shuffled.push_back(events[rng() % events.size()]);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(classify_local(shuffled, kCity) == want);
    }
}

TEST_CASE("shrinking the radius never adds artists") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> dist(-25.0, 25.0);
    std::vector<EventRecord> events;
    for (int a = 0; a < 80; ++a) {
        const int total = 2 + static_cast<int>(rng() % 6);
        for (int e = 0; e < total; ++e) {
            events.push_back({std::to_string(a) + ":" + std::to_string(e), "a" + std::to_string(a),
                              offset_north(kCity.center, dist(rng))});
        }
    }
    std::set<std::string> prev = classify_local(events, CityCenter{"x", kCity.center, 30.0});
    for (double r = 28.0; r > 0.5; r -= 1.5) {
        const auto cur = classify_local(events, CityCenter{"x", kCity.center, r});
        CHECK(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
        prev = cur;
    }
}

TEST_CASE("build_locality_table joins artists to catalog tracks") {
    const std::vector<Interaction> in{{"p1", "t1"}, {"p1", "t2"}, {"p2", "t3"}, {"p2", "t4"}};
    const auto built = build_matrix(in, TrackArtistMap{{"t1", "A"}, {"t2", "A"}, {"t3", "A"}, {"t4", "B"}});
    const std::vector<CityCenter> cities{kCity};
    const auto ev = events_for("A", 2, 0);
    const auto table = build_locality_table(ev, cities, built.catalog);
    const auto& loc = table.city("Atlanta");
    CHECK(loc.artists == std::set<std::string>{"A"});
    CHECK(loc.tracks == std::vector<Index>{0, 1, 2});
    CHECK_THROWS_AS(table.city("Nowhere"), UnknownEntity);

    const auto empty = build_locality_table(std::vector<EventRecord>{}, cities, built.catalog);
    CHECK(empty.city("Atlanta").artists.empty());
    CHECK(empty.city("Atlanta").tracks.empty());
}

TEST_CASE("three overlapping cities match a brute-force check") {
    const LatLon base{40.0, -100.0};
    const std::vector<CityCenter> cities{{"A", base, 10.0}, {"B", offset_north(base, 8.0), 10.0},
                                         {"C", offset_north(base, -6.0), 10.0}};
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> d(-20.0, 25.0);
    std::vector<Interaction> in;
    TrackArtistMap owners;
    std::vector<EventRecord> events;
    for (int a = 0; a < 100; ++a) {
        const std::string artist = "a" + std::to_string(a);
        const std::string track = "t" + std::to_string(a);
        owners[track] = artist;
        in.push_back({"p" + std::to_string(a % 7), track});
        const int total = 1 + static_cast<int>(rng() % 6);
        for (int e = 0; e < total; ++e) events.push_back({artist + "/" + std::to_string(e), artist, offset_north(base, d(rng))});
    }
    const auto built = build_matrix(in, owners);
    const auto table = build_locality_table(events, cities, built.catalog);
    for (const auto& c : cities) {
        const auto want = exhaustive_local(events, c);
        CHECK(table.city(c.name).artists == want);
        for (Index t : table.city(c.name).tracks) {
            CHECK(want.count(built.catalog.artist_ids()[built.catalog.artist_of(t)]) == 1);
        }
        CHECK(table.city(c.name).tracks.size() == want.size());
    }
}

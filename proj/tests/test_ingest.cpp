#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "geo_oracle.hpp"
#include "longtail/error.hpp"
#include "longtail/ingest.hpp"

using namespace longtail;
using namespace longtail::ingest;
using longtail::testing::offset_north;

namespace {

const geo::CityCenter kCity{"Atlanta", {33.749, -84.388}, 10.0};

// 5 playlists, 8 tracks, 3 artists (A owns t1..t3, B owns t4..t6, C owns t7..t8).
std::vector<PlaylistRecord> fixture_playlists() {
    auto tr = [](int i) {
        const char* artist = i <= 3 ? "A" : (i <= 6 ? "B" : "C");
        return PlaylistTrack{"t" + std::to_string(i), artist};
    };
    return {
        {"p1", {tr(1), tr(4), tr(7)}},
        {"p2", {tr(2), tr(5)}},
        {"p3", {tr(6), tr(8)}},
        {"p4", {tr(3), tr(1)}},
        {"p5", {tr(4), tr(5), tr(6), tr(7), tr(8)}},
    };
}

std::vector<geo::EventRecord> fixture_events() {
    return {
        {"e1", "A", offset_north(kCity.center, 2.0)},  {"e2", "A", offset_north(kCity.center, 3.0)},
        {"e3", "B", offset_north(kCity.center, 2.0)},  {"e4", "B", offset_north(kCity.center, 40.0)},
        {"e5", "C", offset_north(kCity.center, 1.0)},  {"e6", "Z", offset_north(kCity.center, 1.0)},
        {"e7", "Z", offset_north(kCity.center, 1.5)},
    };
}

}  // namespace

TEST_CASE("fixture assembles to the enumerated matrix and locality") {
    const auto ds = assemble(fixture_playlists(), fixture_events(), {kCity});
    CHECK(ds.matrix.num_playlists() == 5);
    CHECK(ds.matrix.num_tracks() == 8);
    CHECK(ds.matrix.nnz() == 14);
    CHECK(ds.unknown_artist_events == 2);
    const auto& loc = ds.locality.city("Atlanta");
    CHECK(loc.artists == std::set<std::string>{"A"});
    CHECK(loc.tracks.size() == 3);
    for (Index t : loc.tracks) CHECK(ds.catalog.artist_ids()[ds.catalog.artist_of(t)] == "A");

    const auto s = summarize(ds.matrix, ds.catalog, ds.locality, "Atlanta");
    CHECK(s.local_playlists == 3);  // p1, p2, p4
    CHECK(s.local_artists == 1);
    CHECK(s.local_tracks == 3);
    CHECK(s.sparsity_defined);
    CHECK(s.sparsity == doctest::Approx(1.0 - 4.0 / 15.0).epsilon(1e-15));
    CHECK(local_playlists(ds.matrix, loc) == std::vector<Index>{0, 1, 3});
    CHECK_THROWS_AS(summarize(ds.matrix, ds.catalog, ds.locality, "Nowhere"), UnknownEntity);
}

TEST_CASE("summarize sparsity toys") {
    const std::vector<geo::EventRecord> ev{{"e1", "L", kCity.center}, {"e2", "L", kCity.center}};

    // 10 playlists, 2 local tracks, 2 entries in the local block: 1 - 2/20.
    std::vector<PlaylistRecord> toy;
    for (int i = 0; i < 10; ++i) toy.push_back({"p" + std::to_string(i), {{"n" + std::to_string(i % 3), "N"}}});
    toy[0].tracks.push_back({"l1", "L"});
    toy[7].tracks.push_back({"l2", "L"});
    const auto ds = assemble(toy, ev, {kCity});
    const auto s = summarize(ds.matrix, ds.catalog, ds.locality, "Atlanta");
    CHECK(s.local_tracks == 2);
    CHECK(s.local_playlists == 2);
    CHECK(s.sparsity_defined);
    CHECK(s.sparsity == 1.0 - 2.0 / 20.0);

    // Fully dense local block.
    const std::vector<PlaylistRecord> dense{{"p1", {{"l1", "L"}, {"l2", "L"}}}, {"p2", {{"l1", "L"}, {"l2", "L"}}}};
    const auto ds4 = assemble(dense, ev, {kCity});
    CHECK(summarize(ds4.matrix, ds4.catalog, ds4.locality, "Atlanta").sparsity == 0.0);

    // No local tracks: counts 0, sparsity reported as 1.0 with the flag off.
    const auto ds5 = assemble(dense, {}, {kCity});
    const auto s5 = summarize(ds5.matrix, ds5.catalog, ds5.locality, "Atlanta");
    CHECK(s5.local_tracks == 0);
    CHECK(s5.local_playlists == 0);
    CHECK(s5.sparsity == 1.0);
    CHECK_FALSE(s5.sparsity_defined);
}

TEST_CASE("readers parse the documented containers") {
    std::istringstream pl(R"({"playlist_id": "p1", "tracks": [{"track_id": "t1", "artist_id": "A"}]}

{"playlist_id": "p2", "tracks": []}
)");
    const auto playlists = read_playlists(pl);
    REQUIRE(playlists.size() == 2);
    CHECK(playlists[0].tracks[0].artist_id == "A");
    CHECK(playlists[1].tracks.empty());

    std::istringstream ev("event_id,artist_id,venue_lat,venue_lon\ne1,\"Smith, J\",33.7,-84.4\n");
    const auto events = read_events(ev);
    REQUIRE(events.size() == 1);
    CHECK(events[0].artist_id == "Smith, J");
    CHECK(events[0].venue.lon == -84.4);

    std::istringstream ci("name,lat,lon,radius_miles\nAtlanta,33.749,-84.388,12.5\nBerkeley,37.87,-122.27,\n");
    const auto cities = read_cities(ci);
    REQUIRE(cities.size() == 2);
    CHECK(cities[0].radius_miles == 12.5);
    CHECK(cities[1].radius_miles == geo::kDefaultRadiusMiles);
}

TEST_CASE("malformed record names its line") {
    auto line_of = [](auto&& fn) -> std::size_t {
        try {
            fn();
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of([] {
              std::istringstream in("{\"playlist_id\": \"p1\", \"tracks\": []}\n\n{\"playlist_id\": 3}\n");
              read_playlists(in);
          }) == 3);
    CHECK(line_of([] {
              std::istringstream in("{\"playlist_id\": \"p1\", \"tracks\": []}\n{not json\n");
              read_playlists(in);
          }) == 2);
    CHECK(line_of([] {
              std::istringstream in("{\"playlist_id\": \"p1\", \"tracks\": []}\n{\"playlist_id\": \"p1\", \"tracks\": []}\n");
              read_playlists(in);
          }) == 2);
    CHECK(line_of([] {
              std::istringstream in("event_id,artist_id,venue_lat,venue_lon\ne1,A,33.7,-84.4\ne2,A,abc,1\n");
              read_events(in);
          }) == 3);
    CHECK(line_of([] {
              std::istringstream in("event_id,artist_id,venue_lat,venue_lon\ne1,A,95,1\n");
              read_events(in);
          }) == 2);
    CHECK(line_of([] {
              std::istringstream in("name,lat,lon\nX,1,2,3,4\n");
              read_cities(in);
          }) == 2);
    CHECK(line_of([] {
              std::istringstream in("event_id,artist\n");
              read_events(in);
          }) == 1);
}

TEST_CASE("conflicting track to artist mapping is an error") {
    const std::vector<PlaylistRecord> pl{{"p1", {{"t1", "A"}}}, {"p2", {{"t1", "B"}}}};
    CHECK_THROWS_AS(assemble(pl, {}, {kCity}), DataError);
}

TEST_CASE("empty playlist file gives an empty dataset") {
    const auto ds = assemble({}, fixture_events(), {kCity});
    CHECK(ds.matrix.num_playlists() == 0);
    CHECK(ds.matrix.num_tracks() == 0);
    CHECK(ds.locality.city("Atlanta").artists.empty());
    CHECK(ds.locality.city("Atlanta").tracks.empty());
}

TEST_CASE("load_dataset round trips written files and is deterministic") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "longtail_test_ingest";
    fs::create_directories(dir);
    {
        std::ofstream p(dir / "playlists.jsonl");
        write_playlists(p, fixture_playlists());
        std::ofstream e(dir / "events.csv");
        write_events(e, fixture_events());
        std::ofstream c(dir / "cities.csv");
        write_cities(c, {kCity});
    }
    const auto a = load_dataset(dir / "playlists.jsonl", dir / "events.csv", dir / "cities.csv");
    const auto b = load_dataset(dir / "playlists.jsonl", dir / "events.csv", dir / "cities.csv");
    const auto direct = assemble(fixture_playlists(), fixture_events(), {kCity});
    CHECK(a.matrix.triplets() == direct.matrix.triplets());
    CHECK(a.matrix.triplets() == b.matrix.triplets());
    CHECK(a.catalog.track_ids() == b.catalog.track_ids());
    CHECK(a.locality.city("Atlanta").tracks == direct.locality.city("Atlanta").tracks);
    for (Index t : a.locality.city("Atlanta").tracks) CHECK(t < a.catalog.num_tracks());
    CHECK_THROWS_AS(load_dataset(dir / "missing.jsonl", dir / "events.csv", dir / "cities.csv"), std::runtime_error);
    fs::remove_all(dir);
}

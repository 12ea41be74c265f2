#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "longtail/error.hpp"
#include "longtail/ingest.hpp"
#include "longtail/synth.hpp"

using namespace longtail;
using namespace longtail::synth;

namespace {

SynthParams small() {
    SynthParams p;
    p.playlists = 400;
    p.tracks = 600;
    p.local_artists_per_city = 10;
    p.clusters_per_city = 5;
    return p;
}

}  // namespace

TEST_CASE("invalid sizes are rejected") {
    SynthParams p = small();
    p.playlists = 0;
    CHECK_THROWS_AS(generate(p), DataError);
    p = small();
    p.cities = 9;
    CHECK_THROWS_AS(generate(p), DataError);
    p = small();
    p.local_sparsity = 1.0;
    CHECK_THROWS_AS(generate(p), DataError);
    p = small();
    p.tracks = 10;
    CHECK_THROWS_AS(generate(p), DataError);
}

TEST_CASE("generation is deterministic and seeded") {
    const auto a = generate(small());
    const auto b = generate(small());
    CHECK(a.playlists.size() == b.playlists.size());
    for (std::size_t i = 0; i < a.playlists.size(); ++i) {
        CHECK(a.playlists[i].playlist_id == b.playlists[i].playlist_id);
        CHECK(a.playlists[i].tracks.size() == b.playlists[i].tracks.size());
    }
    SynthParams other = small();
    other.seed = 2;
    const auto c = generate(other);
    bool differs = c.playlists.size() != a.playlists.size();
    for (std::size_t i = 0; !differs && i < a.playlists.size(); ++i) {
        differs = a.playlists[i].tracks.size() != c.playlists[i].tracks.size() ||
                  a.playlists[i].tracks.front().track_id != c.playlists[i].tracks.front().track_id;
    }
    CHECK(differs);
}

TEST_CASE("planted locality, sparsity and popularity shape") {
    for (double target : {0.996, 0.99}) {
        SynthParams p = small();
        p.local_sparsity = target;
        const auto data = generate(p);
        CHECK(data.playlists.size() == p.playlists);
        const auto ds = ingest::assemble(data.playlists, data.events, data.cities);
        CHECK(ds.matrix.num_tracks() <= p.tracks);
        for (std::size_t c = 0; c < data.cities.size(); ++c) {
            const auto& loc = ds.locality.city(data.cities[c].name);
            std::set<std::string> planted(data.local_artists[c].begin(), data.local_artists[c].end());
            CHECK(loc.artists == planted);
            const auto s = ingest::summarize(ds.matrix, ds.catalog, ds.locality, data.cities[c].name);
            CHECK(s.sparsity_defined);
            const double want_density = 1.0 - target;
            CHECK(std::abs((1.0 - s.sparsity) - want_density) <= 0.1 * want_density);
        }
        // track popularity histogram, sorted, is non-increasing and long-tailed
        std::vector<std::size_t> counts;
        for (Index t = 0; t < ds.matrix.num_tracks(); ++t) counts.push_back(ds.matrix.column_nnz(t));
        std::sort(counts.rbegin(), counts.rend());
        CHECK(std::is_sorted(counts.rbegin(), counts.rend()));
        CHECK(counts.front() > 5 * counts[counts.size() / 2]);
    }
}

TEST_CASE("write_dataset produces loadable files and a parameter sidecar") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "longtail_test_synth";
    fs::remove_all(dir);
    const auto p = small();
    const auto data = generate(p);
    write_dataset(dir, data, p);
    for (const char* f : {"playlists.jsonl", "events.csv", "cities.csv", "synth_params.json"}) CHECK(fs::exists(dir / f));
    const auto ds = ingest::load_dataset(dir / "playlists.jsonl", dir / "events.csv", dir / "cities.csv");
    const auto direct = ingest::assemble(data.playlists, data.events, data.cities);
    CHECK(ds.matrix.triplets() == direct.matrix.triplets());
    std::ifstream side(dir / "synth_params.json");
    const auto j = nlohmann::json::parse(side);
    CHECK(j.at("playlists").get<std::size_t>() == p.playlists);
    CHECK(j.at("seed").get<std::uint64_t>() == p.seed);
    fs::remove_all(dir);
}

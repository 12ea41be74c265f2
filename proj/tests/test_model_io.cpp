#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "longtail/error.hpp"
#include "longtail/recommenders/factor_model.hpp"
#include "test_support.hpp"

using namespace longtail;

namespace {

FactorModel sample_model() {
    std::mt19937_64 rng(3);
    return {longtail::testing::random_dense(4, 3, rng), longtail::testing::random_dense(6, 3, rng)};
}

}  // namespace

TEST_CASE("stream round trip is exact") {
    const auto m = sample_model();
    std::stringstream buf;
    write_factor_model(buf, m);
    const std::string bytes = buf.str();
    CHECK(bytes.size() == 4 + 4 + 3 * 8 + (4 + 6) * 3 * 8);
    CHECK(bytes.substr(0, 4) == "LTRC");
    CHECK(static_cast<unsigned char>(bytes[4]) == kModelFileVersion);  // little-endian u32
    CHECK(read_factor_model(buf) == m);
}

TEST_CASE("file round trip and corrupt inputs") {
    namespace fs = std::filesystem;
    const auto m = sample_model();
    const fs::path path = fs::temp_directory_path() / "longtail_test_model.ltrc";
    save_factor_model(path, m);
    CHECK(load_factor_model(path) == m);
    fs::remove(path);
    CHECK_THROWS(load_factor_model(path));

    std::stringstream buf;
    write_factor_model(buf, m);
    std::string bytes = buf.str();

    std::string bad_magic = bytes;
    bad_magic[0] = 'X';
    std::istringstream a(bad_magic);
    CHECK_THROWS_AS(read_factor_model(a), DataError);

    std::string bad_version = bytes;
    bad_version[4] = 9;
    std::istringstream b(bad_version);
    CHECK_THROWS_AS(read_factor_model(b), DataError);

    for (std::size_t cut : {std::size_t{2}, std::size_t{10}, bytes.size() - 1}) {
        std::istringstream c(bytes.substr(0, cut));
        CHECK_THROWS_AS(read_factor_model(c), DataError);
    }
}

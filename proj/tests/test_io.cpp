#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "entmono/io.hpp"
#include "oracles.hpp"

using namespace entmono;
using nlohmann::json;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("entmono_test_" + name)).string();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("state round trip is exact") {
    Rng rng(31);
    const DensityMatrix rho = random_mixed(Dims(2, 3), 4, rng);
    const std::string path = temp_path("rho.json");
    save_state(path, rho);
    const State back = load_state(path);
    REQUIRE(std::holds_alternative<DensityMatrix>(back));
    CHECK((std::get<DensityMatrix>(back).matrix() - rho.matrix()).norm() == 0.0);
    CHECK(std::get<DensityMatrix>(back).dims() == Dims(2, 3));

    const PureState psi = random_pure(Dims(3, 2), rng);
    save_state(path, psi);
    const State back_psi = load_state(path);
    REQUIRE(std::holds_alternative<PureState>(back_psi));
    CHECK((std::get<PureState>(back_psi).amplitudes() - psi.amplitudes()).norm() == 0.0);
    std::filesystem::remove(path);
  }

  TEST_CASE("channel round trip") {
    Rng rng(2);
    const LocalKrausChannel ch = random_channel(3, 2, rng, Side::A);
    const std::string path = temp_path("ch.json");
    save_channel(path, ch);
    const LocalKrausChannel back = load_channel(path);
    CHECK(back.side() == Side::A);
    REQUIRE(back.kraus().size() == 2);
    CHECK((back.kraus()[1] - ch.kraus()[1]).norm() == 0.0);
    std::filesystem::remove(path);
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"matrix": []})")), ParseError);
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"dims": [2], "vector": [[1,0]]})")), ParseError);
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"dims": [1, 1], "vector": [[1,0]], "matrix": [[1,0]]})")),
                    ParseError);
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"dims": [1, 2], "matrix": [[1,0],[0,0],[0,0]]})")), ParseError);
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"dims": [1, 1], "vector": [[1]]})")), ParseError);
    CHECK_THROWS_AS(channel_from_json(json::parse(R"({"side": "C", "kraus": []})")), ParseError);
    CHECK_THROWS_AS(load_state(temp_path("missing.json")), ParseError);

    const std::string path = temp_path("garbage.json");
    std::ofstream(path) << "{not json";
    CHECK_THROWS_AS(load_state(path), ParseError);
    std::filesystem::remove(path);
  }

  TEST_CASE("invariant violations in a well-formed document") {
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"dims": [1, 2], "vector": [[1,0],[1,0]]})")), ValidationError);
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"dims": [2, 2], "vector": [[1,0],[0,0]]})")), DimensionError);
  }

  TEST_CASE("to_density") {
    const State s = PureState(oracle::bell_vector(), Dims(2, 2));
    CHECK((to_density(s).matrix() - oracle::bell_matrix()).norm() < 1e-15);
  }
}

#include <filesystem>
#include <random>

#include "doctest.h"
#include "mgmw/errors.hpp"
#include "mgmw/graph_io.hpp"
#include "support.hpp"

using namespace mgmw;
using nlohmann::json;
using testsupport::fixture;

namespace {

void check_same(const NetworkGraph& a, const NetworkGraph& b) {
    CHECK(a.edge_count == b.edge_count);
    CHECK(a.p2p_rate == b.p2p_rate);
    CHECK(a.main_ifs == b.main_ifs);
    CHECK(a.secondary_ifs == b.secondary_ifs);
    REQUIRE(a.regions.size() == b.regions.size());
    for (const auto& [key, r] : a.regions) {
        const auto& s = b.regions.at(key);
        CHECK(r.ck == s.ck);
        CHECK(r.cl == s.cl);
        CHECK(r.shape.index() == s.shape.index());
        CHECK(sample_boundary(r, 9) == sample_boundary(s, 9));
    }
}

}  // namespace

TEST_CASE("fixtures load and validate") {
    for (const auto& name : {"fig2", "fig3_ring", "fig5", "fig6a", "fig7a", "fig7a_literal", "tree"}) {
        auto g = fixture(name);
        CHECK_MESSAGE(validate_graph(g).empty(), name);
    }
    auto g = fixture("fig6a");
    CHECK(g.edge_count == 15);
    CHECK(g.regions.size() == 5);
    CHECK(g.regions.at({8, 13}).fixed_pair() == RatePair{4, 3});
}

TEST_CASE("round trip through JSON") {
    for (const auto& name : {"fig2", "fig3_ring", "fig6a", "tree"}) {
        auto g = fixture(name);
        check_same(g, graph_from_json(graph_to_json(g)));
    }
    std::mt19937_64 rng(2);
    for (int i = 0; i < 50; ++i) {
        testsupport::RandomGraphOptions o;
        o.regions = testsupport::RegionKind::mixed;
        auto g = testsupport::random_graph(rng, o);
        auto back = graph_from_json(json::parse(graph_to_json(g).dump()));
        check_same(g, back);
    }
    auto path = std::filesystem::temp_directory_path() / "mgmw_roundtrip.json";
    save_graph(fixture("fig5"), path.string());
    check_same(fixture("fig5"), load_graph(path.string()));
    std::filesystem::remove(path);
}

TEST_CASE("topology input derives the sets") {
    auto j = json::parse(R"({
        "topology": [[0, 1], [0, 2], [2, 3]],
        "p2p_rates": [2, 3, 1],
        "multiuser_pairs": [[1, 2]],
        "regions": [{"pair": [2, 1], "fixed": [2.5, 1.5]}]
    })");
    auto g = graph_from_json(j);
    CHECK(validate_graph(g).empty());
    CHECK(g.secondary_ifs[0] == EdgeSet{1});
    CHECK(g.main_ifs[1] == EdgeSet{2});
    // Listed as (2,1), so the values swap into (c_12, c_21).
    CHECK(g.regions.at({0, 1}).fixed_pair() == RatePair{1.5, 2.5});
}

TEST_CASE("bad files raise configuration errors") {
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges": 2})")), ConfigError);
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges": 2, "p2p_rates": [1]})")), ConfigError);
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges": 2, "p2p_rates": [1, 1], "X": [[3], []]})")),
                    ConfigError);
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges": 2, "p2p_rates": [1, 1], "X": [[], []],
                     "Y": [[2], [1]], "regions": [{"pair": [1, 2]}]})")),
                    ConfigError);
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges": "two", "p2p_rates": [1, 1]})")), ConfigError);
    CHECK_THROWS_AS(load_graph("/nonexistent/graph.json"), ConfigError);
}

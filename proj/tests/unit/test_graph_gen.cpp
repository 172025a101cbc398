#include <doctest.h>

#include <map>
#include <sstream>

#include "qnet/graph_gen.hpp"

using namespace qnet;

TEST_CASE("er: forced and infeasible sizes") {
    std::mt19937_64 rng(1);
    const UnderlyingGraph g = er_gnm_connected(2, 1, rng);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0] == std::pair<std::uint32_t, std::uint32_t>{0, 1});

    CHECK_THROWS_AS(er_gnm_connected(5, 3, rng), InfeasibleError);   // below spanning tree
    CHECK_THROWS_AS(er_gnm_connected(4, 7, rng), InfeasibleError);   // above complete graph
}

TEST_CASE("er: exact size and connectivity at benchmark scale") {
    std::mt19937_64 rng(2024);
    const UnderlyingGraph g = er_gnm_connected(400, 800, rng, 1000000);
    CHECK(g.n == 400);
    CHECK(g.edges.size() == 800);
    CHECK_NOTHROW(g.validate());
}

TEST_CASE("er: conditioning on connectivity keeps the draw uniform") {
    // with n = 4, m = 3 the connected graphs are exactly the 16 spanning trees
    std::mt19937_64 rng(1234);
    std::map<std::string, int> counts;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const UnderlyingGraph g = er_gnm_connected(4, 3, rng);
        auto edges = g.edges;
        std::sort(edges.begin(), edges.end());
        std::string key;
        for (const auto& [u, v] : edges) key += std::to_string(u) + std::to_string(v);
        ++counts[key];
    }
    CHECK(counts.size() == 16);
    const double expected = draws / 16.0;
    const double sigma = std::sqrt(draws * (1.0 / 16.0) * (15.0 / 16.0));
    for (const auto& [key, count] : counts) CHECK(std::abs(count - expected) < 3 * sigma);
}

TEST_CASE("ba: forced and benchmark sizes") {
    std::mt19937_64 rng(3);
    const UnderlyingGraph small = ba_graph(3, 2, rng);
    CHECK(small.n == 3);
    CHECK(small.edges.size() == 2);
    CHECK_NOTHROW(small.validate());

    const UnderlyingGraph g = ba_graph(400, 800, rng);
    CHECK(g.edges.size() == 800);
    CHECK_NOTHROW(g.validate());

    CHECK_THROWS_AS(ba_graph(1, 1, rng), InfeasibleError);
    CHECK_THROWS_AS(ba_graph(5, 3, rng), InfeasibleError);  // below spanning tree
    CHECK_THROWS_AS(ba_graph(4, 7, rng), InfeasibleError);  // above complete graph
    CHECK_NOTHROW(ba_graph(4, 6, rng).validate());          // complete graph is reachable
    CHECK_NOTHROW(ba_graph(4, 3, rng).validate());          // spanning tree is reachable
}

TEST_CASE("ba: degree tail is heavier than er's") {
    std::mt19937_64 rng(77);
    int ba_wins = 0;
    const int pairs = 120;
    for (int i = 0; i < pairs; ++i) {
        const UnderlyingGraph er = er_gnm_connected(400, 800, rng, 1000000);
        const UnderlyingGraph ba = ba_graph(400, 800, rng);
        std::size_t er_max = 0, ba_max = 0;
        for (const auto& adj : er.adjacency) er_max = std::max(er_max, adj.size());
        for (const auto& adj : ba.adjacency) ba_max = std::max(ba_max, adj.size());
        if (ba_max > er_max) ++ba_wins;
    }
    CHECK(static_cast<double>(ba_wins) / pairs >= 0.95);
}

TEST_CASE("generators are deterministic under a fixed seed") {
    std::mt19937_64 a(9), b(9);
    CHECK(er_gnm_connected(60, 90, a).edges == er_gnm_connected(60, 90, b).edges);
    std::mt19937_64 c(9), d(9);
    CHECK(ba_graph(60, 150, c).edges == ba_graph(60, 150, d).edges);
}

TEST_CASE("graph file round trip") {
    std::mt19937_64 rng(4);
    const UnderlyingGraph g = ba_graph(20, 40, rng);
    std::stringstream buf;
    save_graph(g, buf);
    const UnderlyingGraph loaded = load_graph(buf);
    CHECK(loaded.n == g.n);
    CHECK(loaded.edges == g.edges);

    std::stringstream bad("no header\n");
    CHECK_THROWS_AS(load_graph(bad), ParseError);
    std::stringstream truncated("# graph v1\n3 2\n0 1\n");
    CHECK_THROWS_AS(load_graph(truncated), ParseError);
}

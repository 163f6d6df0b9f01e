#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <set>
#include <vector>

#include "o2rc/graph.hpp"
#include "o2rc/rng.hpp"

using namespace o2rc;

namespace {

// independent traversal oracle: DFS components over open bonds
struct DfsOracle {
    std::vector<int> label;
    std::vector<char> touches;

    DfsOracle(const Graph& g, const BondConfig& b) {
        int n = g.vertex_count();
        label.assign(n, -1);
        touches.assign(n, 0);
        for (int start = 0; start < n; ++start) {
            if (label[start] >= 0) continue;
            std::vector<int> stack{start}, comp;
            label[start] = start; // start is the smallest unvisited index
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                comp.push_back(v);
                for (auto [y, e] : g.neighbors(v))
                    if (b.open[e] && label[y] < 0) {
                        label[y] = start;
                        stack.push_back(y);
                    }
            }
            bool touch = false;
            for (int v : comp)
                if (g.is_boundary(v)) touch = true;
            for (int v : comp) touches[v] = touch;
        }
    }
};

} // namespace

TEST_CASE("box construction counts") {
    Graph g = Graph::box(2, 3, TimeParam(1.0), BoundaryKind::wired);
    CHECK(g.vertex_count() == 9);
    CHECK(g.edge_count() == 12);
    CHECK(g.boundary().size() == 8);

    Graph path = Graph::box(1, 4, TimeParam(0.5), BoundaryKind::free);
    CHECK(path.vertex_count() == 4);
    CHECK(path.edge_count() == 3);
    CHECK(path.boundary().empty());

    Graph torus = Graph::box(2, 4, TimeParam(1.0), BoundaryKind::torus);
    CHECK(torus.vertex_count() == 16);
    CHECK(torus.edge_count() == 32);
    CHECK(torus.boundary().empty());

    // side-2 torus keeps doubled wrap edges, d * side^d in total
    Graph t2 = Graph::box(2, 2, TimeParam(1.0), BoundaryKind::torus);
    CHECK(t2.edge_count() == 8);

    Graph cube = Graph::box(3, 3, TimeParam(1.0), BoundaryKind::wired);
    CHECK(cube.vertex_count() == 27);
    CHECK(cube.edge_count() == 54);
    CHECK(cube.boundary().size() == 26);

    CHECK_THROWS_AS(Graph::box(4, 3, TimeParam(1.0), BoundaryKind::free), std::invalid_argument);
    CHECK_THROWS_AS(Graph::box(2, 1, TimeParam(1.0), BoundaryKind::free), std::invalid_argument);
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0, 1.0}}, {}), std::invalid_argument); // self loop
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, 1.0}}, {}),
                    std::invalid_argument); // duplicate
    CHECK_THROWS_AS(Graph::from_edges(4, {{0, 1, 1.0}, {2, 3, 1.0}}, {}),
                    std::invalid_argument); // disconnected
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1, -1.0}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1, 1.0}}, {5}), std::invalid_argument);
}

TEST_CASE("components: degenerate bond sets") {
    Graph g = Graph::box(2, 3, TimeParam(1.0), BoundaryKind::wired);

    BondConfig closed;
    closed.open.assign(g.edge_count(), 0);
    ClusterPartition p = components(g, closed);
    CHECK(p.n_clusters == 9);
    for (int v = 0; v < 9; ++v) {
        CHECK(p.label[v] == v);
        CHECK(connected_to_boundary(p, v) == g.is_boundary(v));
    }

    BondConfig open;
    open.open.assign(g.edge_count(), 1);
    p = components(g, open);
    CHECK(p.n_clusters == 1);
    for (int v = 0; v < 9; ++v) {
        CHECK(p.label[v] == 0);
        CHECK(connected_to_boundary(p, v));
    }

    BondConfig bad;
    bad.open.assign(3, 0);
    CHECK_THROWS_AS(components(g, bad), std::invalid_argument);
}

TEST_CASE("components match the DFS oracle on random instances") {
    RngStream rng(42, 0);
    for (int trial = 0; trial < 10000; ++trial) {
        // random connected graph with <= 25 vertices: a random tree plus extras
        int n = 2 + rng.uniform_int(24);
        std::vector<Edge> edges;
        std::set<std::pair<int, int>> seen;
        for (int v = 1; v < n; ++v) {
            int u = rng.uniform_int(v);
            edges.push_back({u, v, 1.0});
            seen.insert({u, v});
        }
        int extras = rng.uniform_int(n);
        for (int i = 0; i < extras; ++i) {
            int u = rng.uniform_int(n), v = rng.uniform_int(n);
            if (u == v) continue;
            auto key = std::minmax(u, v);
            if (seen.insert(key).second) edges.push_back({key.first, key.second, 1.0});
        }
        std::vector<int> boundary;
        for (int v = 0; v < n; ++v)
            if (rng.uniform() < 0.2) boundary.push_back(v);

        Graph g = Graph::from_edges(n, edges, boundary);
        BondConfig b;
        b.open.resize(g.edge_count());
        for (auto& bit : b.open) bit = rng.uniform() < 0.4;

        ClusterPartition p = components(g, b);
        DfsOracle oracle(g, b);
        int clusters = 0;
        for (int v = 0; v < n; ++v) {
            CHECK(p.label[v] == oracle.label[v]);
            CHECK(p.touches[v] == oracle.touches[v]);
            if (p.label[v] == v) ++clusters;
        }
        CHECK(p.n_clusters == clusters);
    }
}

TEST_CASE("union-find merge accounting") {
    UnionFind uf(10);
    CHECK(uf.components() == 10);
    CHECK(uf.unite(0, 1));
    CHECK(uf.unite(1, 2));
    CHECK(!uf.unite(0, 2)); // already merged
    CHECK(uf.components() == 8);
    CHECK(uf.find(0) == uf.find(2));
    CHECK(uf.find(3) != uf.find(0));
}

TEST_CASE("union-find throughput (informational, not asserted)") {
    const int n = 1 << 20;
    UnionFind uf(n);
    RngStream rng(43, 0);
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 4 * n; ++i) uf.unite(rng.uniform_int(n), rng.uniform_int(n));
    long hits = 0;
    for (int i = 0; i < 4 * n; ++i) hits += uf.find(rng.uniform_int(n)) == uf.find(0);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    MESSAGE("union-find: ", 8 * n, " ops in ", secs, " s (", 8 * n / secs / 1e6, " Mop/s), ",
            hits, " root hits");
    CHECK(uf.components() >= 1);
}

TEST_CASE("graph serialization round trip") {
    Graph g = Graph::box(2, 3, TimeParam(0.75), BoundaryKind::wired);
    std::string text = g.serialize();
    Graph g2 = Graph::deserialize(text);
    CHECK(g2.vertex_count() == g.vertex_count());
    CHECK(g2.edge_count() == g.edge_count());
    CHECK(g2.boundary() == g.boundary());
    for (int e = 0; e < g.edge_count(); ++e) {
        CHECK(g2.edges()[e].u == g.edges()[e].u);
        CHECK(g2.edges()[e].v == g.edges()[e].v);
        CHECK(g2.edges()[e].t == g.edges()[e].t);
    }
    CHECK(g2.serialize() == text);

    CHECK_THROWS_AS(Graph::deserialize("garbage"), std::invalid_argument);
}

TEST_CASE("bond bit strings") {
    BondConfig b;
    b.open = {1, 0, 0, 1, 1};
    CHECK(bond_bits(b) == "10011");
    BondConfig b2 = bonds_from_bits("10011");
    CHECK(b2.open == b.open);
    CHECK_THROWS_AS(bonds_from_bits("10x"), std::invalid_argument);
}

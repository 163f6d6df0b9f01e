#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "o2rc/angle.hpp"

namespace o2rc {

struct Edge {
    int u, v;
    double t; // edge time parameter
};

enum class Topology { box, torus, explicit_graph };
enum class BoundaryKind { wired, free, torus };

// Finite connected graph with a designated (possibly empty) boundary set and
// per-edge time parameters. Immutable after construction; edge order is the
// construction order and is part of the reproducibility contract (bond
// sampling consumes randomness in edge order).
class Graph {
public:
    // Hypercubic box in d in {1,2,3} with side >= 2. wired pins the outer
    // layer as boundary, free leaves the boundary empty, torus wraps.
    // A torus of side 2 keeps the doubled wrap edges so the edge count stays
    // d * side^d.
    static Graph box(int dim, int side, TimeParam t, BoundaryKind bc);

    static Graph from_edges(int vertex_count, std::vector<Edge> edges,
                            std::vector<int> boundary,
                            Topology topology = Topology::explicit_graph);

    int vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<int>& boundary() const { return boundary_; }
    bool is_boundary(int v) const { return is_boundary_[v]; }
    Topology topology() const { return topology_; }

    // (neighbor, edge index) pairs in edge-construction order
    const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    // side length / dimension for boxes (0 when explicit)
    int box_side() const { return side_; }
    int box_dim() const { return dim_; }

    // Line-oriented text format: header with counts, boundary list, one
    // "u v t" line per edge.
    std::string serialize() const;
    static Graph deserialize(const std::string& text);

private:
    Graph() = default;
    void build_adjacency();
    void validate() const;

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> boundary_;
    std::vector<std::uint8_t> is_boundary_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    Topology topology_ = Topology::explicit_graph;
    int side_ = 0, dim_ = 0;
};

// Path-compressed, rank-balanced union-find. Single writer while mutating.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), rank_(n, 0), components_(n) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }

    int find(int x) {
        int root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            int next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    bool unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
        parent_[rb] = ra;
        if (rank_[ra] == rank_[rb]) ++rank_[ra];
        --components_;
        return true;
    }

    int components() const { return components_; }

private:
    std::vector<int> parent_;
    std::vector<std::uint8_t> rank_;
    int components_;
};

// Open-bond flags, one per edge in graph edge order.
struct BondConfig {
    std::vector<std::uint8_t> open;
};

// Clusters of a bond configuration. Labels are deterministic: the smallest
// vertex index in the cluster. touches[v] says whether v's cluster contains
// a boundary vertex.
struct ClusterPartition {
    std::vector<int> label;
    std::vector<std::uint8_t> touches;
    int n_clusters = 0;
};

ClusterPartition components(const Graph& g, const BondConfig& bonds);

inline bool connected_to_boundary(const ClusterPartition& p, int x) { return p.touches[x] != 0; }

// Bond bits as a '0'/'1' string in edge order.
std::string bond_bits(const BondConfig& b);
BondConfig bonds_from_bits(const std::string& bits);

} // namespace o2rc

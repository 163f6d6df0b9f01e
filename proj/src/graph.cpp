#include "o2rc/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace o2rc {

namespace {

// vertex index from coordinates, row-major
int coord_index(const std::vector<int>& c, int side) {
    int idx = 0;
    for (int x : c) idx = idx * side + x;
    return idx;
}

} // namespace

Graph Graph::box(int dim, int side, TimeParam t, BoundaryKind bc) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("box dimension must be in {1,2,3}");
    if (side < 2) throw std::invalid_argument("box side must be >= 2");

    Graph g;
    g.dim_ = dim;
    g.side_ = side;
    g.topology_ = bc == BoundaryKind::torus ? Topology::torus : Topology::box;

    int n = 1;
    for (int d = 0; d < dim; ++d) n *= side;
    g.n_ = n;

    std::vector<int> c(dim, 0);
    for (int v = 0; v < n; ++v) {
        // decode coordinates of v
        int rem = v;
        for (int d = dim - 1; d >= 0; --d) {
            c[d] = rem % side;
            rem /= side;
        }
        for (int d = 0; d < dim; ++d) {
            if (c[d] + 1 < side) {
                std::vector<int> c2 = c;
                c2[d] += 1;
                g.edges_.push_back({v, coord_index(c2, side), t.value()});
            } else if (bc == BoundaryKind::torus) {
                std::vector<int> c2 = c;
                c2[d] = 0;
                g.edges_.push_back({v, coord_index(c2, side), t.value()});
            }
        }
    }

    g.is_boundary_.assign(n, 0);
    if (bc == BoundaryKind::wired) {
        for (int v = 0; v < n; ++v) {
            int rem = v;
            bool outer = false;
            for (int d = dim - 1; d >= 0; --d) {
                int x = rem % side;
                rem /= side;
                if (x == 0 || x == side - 1) outer = true;
            }
            if (outer) {
                g.is_boundary_[v] = 1;
                g.boundary_.push_back(v);
            }
        }
    }

    g.build_adjacency();
    g.validate();
    return g;
}

Graph Graph::from_edges(int vertex_count, std::vector<Edge> edges,
                        std::vector<int> boundary, Topology topology) {
    Graph g;
    g.n_ = vertex_count;
    g.edges_ = std::move(edges);
    g.boundary_ = std::move(boundary);
    g.topology_ = topology;
    g.is_boundary_.assign(vertex_count, 0);
    for (int b : g.boundary_) {
        if (b < 0 || b >= vertex_count) throw std::invalid_argument("boundary vertex out of range");
        g.is_boundary_[b] = 1;
    }
    g.build_adjacency();
    g.validate();
    return g;
}

void Graph::build_adjacency() {
    adj_.assign(n_, {});
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        const Edge& ed = edges_[e];
        adj_[ed.u].push_back({ed.v, e});
        adj_[ed.v].push_back({ed.u, e});
    }
}

void Graph::validate() const {
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("self-loops not allowed");
        if (!(e.t > 0.0)) throw std::invalid_argument("edge time parameter must be positive");
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second && topology_ != Topology::torus)
            throw std::invalid_argument("duplicate edge");
    }
    // connectivity
    if (n_ > 0) {
        UnionFind uf(n_);
        for (const Edge& e : edges_) uf.unite(e.u, e.v);
        if (uf.components() != 1) throw std::invalid_argument("graph must be connected");
    }
}

ClusterPartition components(const Graph& g, const BondConfig& bonds) {
    int n = g.vertex_count();
    if (static_cast<int>(bonds.open.size()) != g.edge_count())
        throw std::invalid_argument("bond configuration does not match graph edges");

    UnionFind uf(n);
    for (int e = 0; e < g.edge_count(); ++e)
        if (bonds.open[e]) uf.unite(g.edges()[e].u, g.edges()[e].v);

    ClusterPartition p;
    p.label.assign(n, -1);
    p.touches.assign(n, 0);

    // smallest vertex index per component
    std::vector<int> min_of_root(n, -1);
    for (int v = 0; v < n; ++v) {
        int r = uf.find(v);
        if (min_of_root[r] < 0) min_of_root[r] = v; // v ascending, first hit is the min
    }
    std::vector<std::uint8_t> root_touches(n, 0);
    for (int b : g.boundary()) root_touches[uf.find(b)] = 1;

    int count = 0;
    for (int v = 0; v < n; ++v) {
        int r = uf.find(v);
        p.label[v] = min_of_root[r];
        p.touches[v] = root_touches[r];
        if (p.label[v] == v) ++count;
    }
    p.n_clusters = count;
    return p;
}

std::string Graph::serialize() const {
    std::ostringstream os;
    os.precision(17);
    const char* topo = topology_ == Topology::box ? "box"
                     : topology_ == Topology::torus ? "torus" : "explicit";
    os << "o2rc-graph 1\n";
    os << n_ << ' ' << edges_.size() << ' ' << boundary_.size() << ' ' << topo << '\n';
    for (size_t i = 0; i < boundary_.size(); ++i)
        os << boundary_[i] << (i + 1 == boundary_.size() ? '\n' : ' ');
    if (boundary_.empty()) os << '\n';
    for (const Edge& e : edges_) os << e.u << ' ' << e.v << ' ' << e.t << '\n';
    return os.str();
}

Graph Graph::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string magic;
    int version = 0;
    is >> magic >> version;
    if (magic != "o2rc-graph" || version != 1)
        throw std::invalid_argument("not an o2rc graph file");
    int n = 0, ne = 0, nb = 0;
    std::string topo;
    is >> n >> ne >> nb >> topo;
    if (!is) throw std::invalid_argument("malformed graph header");
    std::vector<int> boundary(nb);
    for (int i = 0; i < nb; ++i) is >> boundary[i];
    std::vector<Edge> edges(ne);
    for (int i = 0; i < ne; ++i) is >> edges[i].u >> edges[i].v >> edges[i].t;
    if (!is) throw std::invalid_argument("malformed graph body");
    Topology t = topo == "box" ? Topology::box
               : topo == "torus" ? Topology::torus : Topology::explicit_graph;
    return from_edges(n, std::move(edges), std::move(boundary), t);
}

std::string bond_bits(const BondConfig& b) {
    std::string s(b.open.size(), '0');
    for (size_t i = 0; i < b.open.size(); ++i)
        if (b.open[i]) s[i] = '1';
    return s;
}

BondConfig bonds_from_bits(const std::string& bits) {
    BondConfig b;
    b.open.resize(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("bond bits must be 0/1");
        b.open[i] = bits[i] == '1';
    }
    return b;
}

} // namespace o2rc

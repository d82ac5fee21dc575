#include "planar/shortest_path.hpp"

#include <queue>
#include <tuple>

namespace planar {

ShortestPathTree sssp(const PlanarGraph& g, NodeId source) {
    if (source >= g.n()) throw ParameterError("sssp source out of range");
    ShortestPathTree t;
    t.root = source;
    t.parent.assign(g.n(), kInvalidNode);
    t.parent_edge.assign(g.n(), kInvalidEdge);
    t.dist.assign(g.n(), kUnreachable);

    using Item = std::pair<Weight, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    t.dist[source] = 0;
    pq.emplace(0, source);
    std::vector<bool> done(g.n(), false);

    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = true;
        for (EdgeId e : g.incident(u)) {
            NodeId v = g.other(e, u);
            Weight nd = d + g.edge(e).w;
            if (nd < t.dist[v]) {
                t.dist[v] = nd;
                t.parent[v] = u;
                t.parent_edge[v] = e;
                pq.emplace(nd, v);
            }
        }
    }
    return t;
}

MultiSourceResult nearest_sources(const PlanarGraph& g, const std::vector<NodeId>& sources) {
    if (sources.empty()) throw ParameterError("nearest_sources needs at least one source");
    MultiSourceResult r;
    r.dist.assign(g.n(), kUnreachable);
    r.nearest.assign(g.n(), kInvalidNode);

    using Item = std::tuple<Weight, NodeId, NodeId>;  // dist, source, node
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (NodeId s : sources) {
        if (s >= g.n()) throw ParameterError("source out of range");
        if (r.nearest[s] == kInvalidNode) {
            r.dist[s] = 0;
            r.nearest[s] = s;
            pq.emplace(0, s, s);
        }
    }

    std::vector<bool> done(g.n(), false);
    while (!pq.empty()) {
        auto [d, src, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = true;
        r.dist[u] = d;
        r.nearest[u] = src;
        for (EdgeId e : g.incident(u)) {
            NodeId v = g.other(e, u);
            if (done[v]) continue;
            Weight nd = d + g.edge(e).w;
            if (nd < r.dist[v] || (nd == r.dist[v] && src < r.nearest[v])) {
                r.dist[v] = nd;
                r.nearest[v] = src;
                pq.emplace(nd, src, v);
            }
        }
    }
    return r;
}

DiameterBounds diameter_bounds(const PlanarGraph& g) {
    DiameterBounds b;
    if (g.n() == 0) return b;
    ShortestPathTree first = sssp(g, 0);
    Weight ecc0 = 0;
    NodeId far = 0;
    for (NodeId v = 0; v < g.n(); ++v) {
        if (!first.reachable(v)) continue;
        if (first.dist[v] > ecc0) {
            ecc0 = first.dist[v];
            far = v;
        }
    }
    ShortestPathTree second = sssp(g, far);
    Weight lb = ecc0;
    for (NodeId v = 0; v < g.n(); ++v)
        if (second.reachable(v) && second.dist[v] > lb) lb = second.dist[v];
    b.lb = lb;
    b.ub = 2 * ecc0;
    if (b.ub < b.lb) b.ub = b.lb;  // one sided star shapes
    return b;
}

}  // namespace planar

#include "planar/cover.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>

#include "planar/shortest_path.hpp"

namespace planar {

namespace {

// Undirected scan of the alive part of a tree: fills dist and parent from
// `start`, returns the farthest alive node (lowest id on ties).
struct TreeScan {
    const std::vector<std::vector<std::pair<NodeId, Weight>>>& adj;
    const std::vector<char>& alive;
    std::vector<Weight> dist;
    std::vector<NodeId> parent;

    NodeId run(NodeId start) {
        std::fill(dist.begin(), dist.end(), kUnreachable);
        std::fill(parent.begin(), parent.end(), kInvalidNode);
        dist[start] = 0;
        std::vector<NodeId> stack{start};
        NodeId far = start;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            if (dist[u] > dist[far] || (dist[u] == dist[far] && u < far)) far = u;
            for (auto [v, w] : adj[u]) {
                if (!alive[v] || v == parent[u]) continue;
                parent[v] = u;
                dist[v] = dist[u] + w;
                stack.push_back(v);
            }
        }
        return far;
    }
};

}  // namespace

Weight subdivided_node_count(const PlanarGraph& g) {
    Weight total = static_cast<Weight>(g.n());
    for (EdgeId e = 0; e < g.m(); ++e) total += g.edge(e).w - 1;
    return total;
}

DominatingSet dominating_set(const PlanarGraph& g, Weight delta) {
    if (g.n() == 0) throw ParameterError("dominating_set needs a nonempty graph");
    if (delta < 0) throw ParameterError("dominating_set needs delta >= 0");
    if (!g.connected()) throw ParameterError("dominating_set needs a connected graph");

    DominatingSet out;
    out.delta = delta;

    ShortestPathTree spt = sssp(g, 0);
    Weight ecc0 = 0;
    for (NodeId v = 0; v < g.n(); ++v) ecc0 = std::max(ecc0, spt.dist[v]);

    if (ecc0 <= delta) {
        out.landmarks = {0};
    } else {
        // Greedy on the shortest-path tree.  Each round finds the tree's
        // diameter endpoints p, q; if some node already covers everything
        // we take it and stop, otherwise we plant a landmark on the q-to-p
        // path as far from q as delta allows and prune its whole branch.
        std::vector<std::vector<std::pair<NodeId, Weight>>> adj(g.n());
        for (NodeId v = 0; v < g.n(); ++v) {
            if (spt.parent[v] == kInvalidNode) continue;
            Weight w = g.edge(spt.parent_edge[v]).w;
            adj[v].emplace_back(spt.parent[v], w);
            adj[spt.parent[v]].emplace_back(v, w);
        }
        std::vector<char> alive(g.n(), 1);
        NodeId root = 0;
        TreeScan scan{adj, alive,
                      std::vector<Weight>(g.n(), kUnreachable),
                      std::vector<NodeId>(g.n(), kInvalidNode)};
        std::vector<Weight> dist_p(g.n());
        std::vector<NodeId> parent_p(g.n());

        while (root != kInvalidNode) {
            NodeId p = scan.run(root);
            NodeId q = scan.run(p);
            dist_p = scan.dist;
            parent_p = scan.parent;  // points toward p, the climb direction
            scan.run(q);

            // eccentricity within the alive tree is realized at p or q
            NodeId best = kInvalidNode;
            Weight best_ecc = kUnreachable;
            for (NodeId v = 0; v < g.n(); ++v) {
                if (!alive[v]) continue;
                Weight ecc = std::max(dist_p[v], scan.dist[v]);
                if (ecc < best_ecc) {
                    best_ecc = ecc;
                    best = v;
                }
            }
            if (best_ecc <= delta) {
                out.landmarks.push_back(best);
                break;
            }

            // climb from q toward p while staying within delta of q
            NodeId w = q;
            while (parent_p[w] != kInvalidNode &&
                   dist_p[q] - dist_p[parent_p[w]] <= delta) {
                w = parent_p[w];
            }
            assert(parent_p[w] != kInvalidNode && "climb ran past the far diameter endpoint");
            out.landmarks.push_back(w);

            // prune w's branch: the component of w without its parent edge
            std::vector<NodeId> stack{w};
            alive[w] = 0;
            NodeId cut = parent_p[w];
            while (!stack.empty()) {
                NodeId u = stack.back();
                stack.pop_back();
                for (auto [v, wt] : adj[u]) {
                    (void)wt;
                    if (!alive[v] || (u == w && v == cut)) continue;
                    alive[v] = 0;
                    stack.push_back(v);
                }
            }
            root = cut;
        }
        std::sort(out.landmarks.begin(), out.landmarks.end());
    }

    MultiSourceResult near = nearest_sources(g, out.landmarks);
    out.nearest = std::move(near.nearest);
    out.nearest_dist = std::move(near.dist);
    for (NodeId v = 0; v < g.n(); ++v)
        assert(out.nearest_dist[v] <= delta && "landmark set leaves a node uncovered");
    return out;
}

namespace {

// Ball carving for one radius level.  Centers are chosen greedily in node
// id order; a node becomes a center only if no earlier center is within
// 2r, so centers are pairwise more than 2r apart and every node sees a
// center within 2r.  Each subgraph is the ball of radius 3r around its
// center, which therefore contains the full r-ball of every node it was
// charged with, and its Dijkstra tree has depth at most 3r.
CoverLevel build_level(const PlanarGraph& g, Weight radius,
                       std::vector<Weight>& dist, std::vector<NodeId>& touched) {
    CoverLevel lvl;
    lvl.radius = radius;
    Weight near_limit = radius > kUnreachable / 2 ? kUnreachable : 2 * radius;
    Weight ball_limit = radius > kUnreachable / 3 ? kUnreachable : 3 * radius;

    std::vector<char> covered(g.n(), 0);
    using Item = std::pair<Weight, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;

    for (NodeId c = 0; c < g.n(); ++c) {
        if (covered[c]) continue;
        CoverSubgraph sub;
        sub.center = c;

        touched.clear();
        dist[c] = 0;
        touched.push_back(c);
        pq.emplace(0, c);
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d > dist[u]) continue;
            sub.nodes.push_back(u);
            sub.tree_depth = std::max(sub.tree_depth, d);
            if (d <= near_limit) covered[u] = 1;
            for (EdgeId e : g.incident(u)) {
                NodeId v = g.other(e, u);
                Weight nd = d + g.edge(e).w;
                if (nd <= ball_limit && nd < dist[v]) {
                    if (dist[v] == kUnreachable) touched.push_back(v);
                    dist[v] = nd;
                    pq.emplace(nd, v);
                }
            }
        }
        for (NodeId v : touched) dist[v] = kUnreachable;
        std::sort(sub.nodes.begin(), sub.nodes.end());
        lvl.subgraphs.push_back(std::move(sub));
    }

    // membership rows, CSR; ids come out ascending per node because the
    // subgraphs are filled in increasing id order
    lvl.member_offset.assign(g.n() + 1, 0);
    for (const CoverSubgraph& sub : lvl.subgraphs)
        for (NodeId v : sub.nodes) ++lvl.member_offset[v + 1];
    for (NodeId v = 0; v < g.n(); ++v) lvl.member_offset[v + 1] += lvl.member_offset[v];
    lvl.member_ids.resize(lvl.member_offset[g.n()]);
    std::vector<std::uint32_t> fill(lvl.member_offset.begin(), lvl.member_offset.end() - 1);
    for (std::uint32_t s = 0; s < lvl.subgraphs.size(); ++s)
        for (NodeId v : lvl.subgraphs[s].nodes) lvl.member_ids[fill[v]++] = s;
    return lvl;
}

}  // namespace

CoverHierarchy build_cover_hierarchy(const PlanarGraph& g, double eps, Weight delta) {
    if (g.n() == 0) throw ParameterError("cover hierarchy needs a nonempty graph");
    if (!(eps > 0) || !std::isfinite(eps)) throw ParameterError("cover hierarchy needs eps > 0");
    if (delta < 0) throw ParameterError("cover hierarchy needs delta >= 0");
    if (!g.connected()) throw ParameterError("cover hierarchy needs a connected graph");

    CoverHierarchy h;
    h.eps = eps;
    h.delta = delta;

    Weight top = static_cast<Weight>(
        std::ceil(2.0L * static_cast<long double>(delta) / static_cast<long double>(eps)));

    std::vector<Weight> dist(g.n(), kUnreachable);
    std::vector<NodeId> touched;
    for (int i = 1; i <= 62; ++i) {
        Weight radius = Weight{1} << i;
        if (radius > top) break;
        h.levels.push_back(build_level(g, radius, dist, touched));
    }

    for (const CoverLevel& lvl : h.levels) {
        for (const CoverSubgraph& sub : lvl.subgraphs) {
            double r = static_cast<double>(sub.tree_depth) / static_cast<double>(lvl.radius);
            h.rho = std::max(h.rho, r);
        }
        for (NodeId v = 0; v < g.n(); ++v) {
            auto members = static_cast<std::uint32_t>(lvl.membership_count(v));
            h.degree_bound = std::max(h.degree_bound, members);
        }
    }
    return h;
}

std::int32_t shared_subgraph(const CoverHierarchy& h, int level, NodeId u, NodeId v) {
    if (level < 1 || static_cast<std::size_t>(level) > h.levels.size())
        throw ParameterError("shared_subgraph level out of range");
    const CoverLevel& lvl = h.levels[static_cast<std::size_t>(level - 1)];
    if (u + 1 >= lvl.member_offset.size() || v + 1 >= lvl.member_offset.size())
        throw ParameterError("shared_subgraph node out of range");

    std::uint32_t a = lvl.member_offset[u], a_end = lvl.member_offset[u + 1];
    std::uint32_t b = lvl.member_offset[v], b_end = lvl.member_offset[v + 1];
    while (a < a_end && b < b_end) {
        std::uint32_t sa = lvl.member_ids[a], sb = lvl.member_ids[b];
        if (sa == sb) return static_cast<std::int32_t>(sa);
        if (sa < sb) ++a;
        else ++b;
    }
    return -1;
}

nlohmann::ordered_json cover_stats(const CoverHierarchy& h) {
    nlohmann::ordered_json levels = nlohmann::ordered_json::array();
    for (const CoverLevel& lvl : h.levels) {
        std::size_t max_members = 0;
        Weight max_depth = 0;
        for (std::size_t v = 0; v + 1 < lvl.member_offset.size(); ++v)
            max_members = std::max(max_members,
                                   static_cast<std::size_t>(lvl.membership_count(static_cast<NodeId>(v))));
        for (const CoverSubgraph& sub : lvl.subgraphs) max_depth = std::max(max_depth, sub.tree_depth);
        levels.push_back({{"radius", lvl.radius},
                          {"subgraphs", lvl.subgraphs.size()},
                          {"max_membership", max_members},
                          {"max_tree_depth", max_depth}});
    }
    return nlohmann::ordered_json{{"eps", h.eps},
                                  {"delta", h.delta},
                                  {"rho", h.rho},
                                  {"degree_bound", h.degree_bound},
                                  {"levels", std::move(levels)}};
}

}  // namespace planar

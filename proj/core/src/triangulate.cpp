#include "planar/triangulate.hpp"

#include <unordered_set>
#include <vector>

namespace planar {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
    return std::uint64_t(std::min(a, b)) << 32 | std::max(a, b);
}

}  // namespace

// Ear cutting on the dart-linked face walks.  A corner (a -> b -> c) is
// cut by the chord (a, c) whenever a != c and the chord does not exist
// yet; the face splits into the triangle (a, b, c) and a walk one dart
// shorter.  On a simple face some corner is always cuttable (two blocked
// neighboring corners would force crossing chords inside the disk on the
// other side of the face); walks through cut nodes lose their repeats the
// same way, which the sweep guard below double-checks.
PlanarGraph triangulate(const PlanarGraph& g) {
    if (!g.embedded()) throw ParameterError("triangulate needs an embedded graph");
    if (g.n() < 3) return g;
    if (!g.connected()) throw ParameterError("triangulate needs a connected graph");

    const Weight fill_w = 1 + Weight(g.n()) * g.max_weight();

    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    std::vector<std::uint64_t> next(2 * g.m());
    for (std::uint64_t d = 0; d < 2 * g.m(); ++d) next[d] = g.next_in_face(d);
    std::vector<std::uint64_t> prev(next.size());
    for (std::uint64_t d = 0; d < next.size(); ++d) prev[next[d]] = d;

    std::unordered_set<std::uint64_t> adjacent;
    adjacent.reserve(edges.size() * 4);
    for (const Edge& e : edges) adjacent.insert(pair_key(e.u, e.v));

    auto tail = [&](std::uint64_t d) {
        const Edge& e = edges[d >> 1];
        return (d & 1) ? e.v : e.u;
    };
    auto head = [&](std::uint64_t d) {
        const Edge& e = edges[d >> 1];
        return (d & 1) ? e.u : e.v;
    };

    // collect faces as (some dart, walk length)
    std::vector<std::pair<std::uint64_t, std::size_t>> faces;
    {
        std::vector<bool> seen(next.size(), false);
        for (std::uint64_t d = 0; d < next.size(); ++d) {
            if (seen[d]) continue;
            std::size_t len = 0;
            std::uint64_t cur = d;
            while (!seen[cur]) {
                seen[cur] = true;
                ++len;
                cur = next[cur];
            }
            faces.emplace_back(d, len);
        }
    }

    while (!faces.empty()) {
        auto [cur, len] = faces.back();
        faces.pop_back();
        std::size_t since_cut = 0;
        while (len > 3) {
            std::uint64_t d1 = cur, d2 = next[cur];
            NodeId a = tail(d1), c = head(d2);
            if (a != c && !adjacent.count(pair_key(a, c))) {
                // new chord a -> c as dart x, c -> a as dart x^1
                EdgeId e = EdgeId(edges.size());
                edges.push_back(Edge{a, c, fill_w, false});
                adjacent.insert(pair_key(a, c));
                std::uint64_t x = 2 * std::uint64_t(e), xr = x + 1;
                next.resize(next.size() + 2);
                prev.resize(prev.size() + 2);
                std::uint64_t d0 = prev[d1], d3 = next[d2];
                // triangle a -> b -> c -> a
                next[d2] = xr;
                prev[xr] = d2;
                next[xr] = d1;
                prev[d1] = xr;
                // remainder continues through the chord
                next[d0] = x;
                prev[x] = d0;
                next[x] = d3;
                prev[d3] = x;
                cur = x;
                --len;
                since_cut = 0;
            } else {
                cur = next[cur];
                if (++since_cut > len) throw BuildError("face cannot be triangulated");
            }
        }
    }

    // rebuild: rotation at h follows d -> reverse(next[d]) around h
    PlanarGraph out(g.n());
    for (const Edge& e : edges) out.add_edge(e.u, e.v, e.w, e.original);
    std::vector<std::vector<EdgeId>> rot(g.n());
    std::vector<bool> done(g.n(), false);
    for (std::uint64_t d = 0; d < next.size(); ++d) {
        NodeId h = head(d);
        if (done[h]) continue;
        done[h] = true;
        std::uint64_t cur = d;
        do {
            rot[h].push_back(EdgeId(cur >> 1));
            cur = next[cur] ^ 1;
        } while (cur != d);
    }
    out.set_rotations(std::move(rot), /*check=*/true);

    if (out.m() != 3 * out.n() - 6)
        throw BuildError("triangulation did not reach the full edge count");
    return out;
}

}  // namespace planar

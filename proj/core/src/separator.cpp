#include "planar/separator.hpp"

#include <cstdint>

#include "planar/types.hpp"
#include "separator_internal.hpp"

namespace planar {
namespace detail {

FaceStructure build_face_structure(const PlanarGraph& g, const ShortestPathTree& t) {
    const std::size_t n = g.n();
    const std::size_t m = g.m();

    FaceStructure fs;
    fs.face_of_dart.assign(2 * m, UINT32_MAX);
    fs.node_face.assign(n, UINT32_MAX);

    // ---- trace the triangle faces ----

    for (std::uint64_t d0 = 0; d0 < 2 * m; ++d0) {
        if (fs.face_of_dart[d0] != UINT32_MAX) continue;
        const auto f = std::uint32_t(fs.corners.size());
        std::array<NodeId, 3> c{};
        std::size_t len = 0;
        std::uint64_t d = d0;
        do {
            if (len >= 3) throw BuildError("face walk exceeds three darts");
            fs.face_of_dart[d] = f;
            c[len++] = g.dart_tail(d);
            d = g.next_in_face(d);
        } while (d != d0);
        if (len != 3) throw BuildError("face walk is not a triangle");
        fs.corners.push_back(c);
        for (NodeId x : c)
            if (f < fs.node_face[x]) fs.node_face[x] = f;
    }

    // ---- cotree arcs across non-tree edges ----

    std::vector<char> tree_edge(m, 0);
    for (NodeId v = 0; v < n; ++v) {
        if (v == t.root) continue;
        if (t.parent_edge[v] == kInvalidEdge) throw BuildError("tree does not span the graph");
        tree_edge[t.parent_edge[v]] = 1;
    }

    const auto faces = std::uint32_t(fs.corners.size());
    fs.adj.assign(faces, {});
    fs.min_arc.assign(faces, kInvalidEdge);
    for (EdgeId e = 0; e < m; ++e) {
        if (tree_edge[e]) continue;
        const std::uint32_t fa = fs.face_of_dart[2 * std::uint64_t(e)];
        const std::uint32_t fb = fs.face_of_dart[2 * std::uint64_t(e) + 1];
        if (fa == fb) throw BuildError("non-tree edge borders a single face");
        fs.adj[fa].push_back({fb, e});
        fs.adj[fb].push_back({fa, e});
        if (e < fs.min_arc[fa]) fs.min_arc[fa] = e;
        if (e < fs.min_arc[fb]) fs.min_arc[fb] = e;
    }

    // the arcs must form a spanning tree of the dual
    std::vector<char> seen(faces, 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::uint32_t f = stack.back();
        stack.pop_back();
        for (const auto& a : fs.adj[f]) {
            if (seen[a.to]) continue;
            seen[a.to] = 1;
            ++reached;
            stack.push_back(a.to);
        }
    }
    if (reached != faces) throw BuildError("dual arcs do not span all faces");
    return fs;
}

std::array<NodeId, 3> centroid_face_corners(const FaceStructure& fs,
                                            const std::vector<long double>& node_weight) {
    const auto faces = std::uint32_t(fs.corners.size());

    std::vector<long double> face_w(faces, 0.0L);
    long double total = 0.0L;
    for (NodeId v = 0; v < node_weight.size(); ++v) {
        face_w[fs.node_face[v]] += node_weight[v];
        total += node_weight[v];
    }

    // ---- subtree sums over the cotree rooted at face 0 ----

    std::vector<std::uint32_t> order;
    order.reserve(faces);
    std::vector<std::uint32_t> parent(faces, UINT32_MAX);
    std::vector<char> seen(faces, 0);
    order.push_back(0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::uint32_t f = order[i];
        for (const auto& a : fs.adj[f]) {
            if (seen[a.to]) continue;
            seen[a.to] = 1;
            parent[a.to] = f;
            order.push_back(a.to);
        }
    }

    std::vector<long double> sub = face_w;
    for (std::size_t i = order.size(); i-- > 1;) {
        const std::uint32_t f = order[i];
        sub[parent[f]] += sub[f];
    }

    // ---- pick the centroid face ----

    std::uint32_t best = UINT32_MAX;
    long double best_hang = 0.0L;
    EdgeId best_arc = kInvalidEdge;
    for (std::uint32_t f = 0; f < faces; ++f) {
        long double hang = total - sub[f];
        for (const auto& a : fs.adj[f]) {
            if (a.to == parent[f]) continue;
            if (sub[a.to] > hang) hang = sub[a.to];
        }
        if (best == UINT32_MAX || hang < best_hang ||
            (hang == best_hang && fs.min_arc[f] < best_arc)) {
            best = f;
            best_hang = hang;
            best_arc = fs.min_arc[f];
        }
    }
    if (2.0L * best_hang > total) throw BuildError("no balanced face found");
    return fs.corners[best];
}

}  // namespace detail

std::array<NodeId, 3> fundamental_cycle_separator(const PlanarGraph& g,
                                                  const ShortestPathTree& t,
                                                  const std::vector<double>& weights) {
    const std::size_t n = g.n();
    if (n < 3) throw ParameterError("separator needs at least three nodes");
    if (!g.embedded()) throw ParameterError("graph is not embedded");
    if (!g.connected()) throw ParameterError("graph is not connected");
    if (g.m() != 3 * n - 6) throw ParameterError("graph is not triangulated");
    if (t.root >= n || t.parent.size() != n || t.parent_edge.size() != n || t.dist.size() != n)
        throw ParameterError("tree does not match the graph");
    if (weights.size() != n) throw ParameterError("one weight per node required");

    long double total = 0.0L;
    std::vector<long double> w(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (weights[v] < 0.0 || weights[v] > 1.0) throw ParameterError("weights must lie in [0, 1]");
        w[v] = weights[v];
        total += w[v];
    }
    if (total <= 0.0L) throw ParameterError("weights sum to zero");

    const detail::FaceStructure fs = detail::build_face_structure(g, t);
    return detail::centroid_face_corners(fs, w);
}

}  // namespace planar

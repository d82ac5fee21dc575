#include "planar/graph.hpp"

#include <algorithm>
#include <cassert>

namespace planar {

NodeId PlanarGraph::add_node() {
    embedded_ = false;
    rotation_.emplace_back();
    return NodeId(rotation_.size() - 1);
}

EdgeId PlanarGraph::add_edge(NodeId u, NodeId v, Weight w, bool original) {
    if (u >= n() || v >= n()) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self loop");
    if (w < 0) throw ValidationError("negative edge weight");
    if (find_edge(u, v) != kInvalidEdge) throw ValidationError("parallel edge");
    EdgeId e = EdgeId(edges_.size());
    edges_.push_back(Edge{u, v, w, original});
    pos_.push_back(std::uint32_t(rotation_[u].size()));
    pos_.push_back(std::uint32_t(rotation_[v].size()));
    rotation_[u].push_back(e);
    rotation_[v].push_back(e);
    embedded_ = false;
    return e;
}

EdgeId PlanarGraph::find_edge(NodeId u, NodeId v) const {
    const auto& side = rotation_[u].size() <= rotation_[v].size() ? rotation_[u] : rotation_[v];
    NodeId from = rotation_[u].size() <= rotation_[v].size() ? u : v;
    NodeId to = from == u ? v : u;
    for (EdgeId e : side)
        if (other(e, from) == to) return e;
    return kInvalidEdge;
}

std::uint64_t PlanarGraph::next_in_face(std::uint64_t d) const {
    NodeId h = dart_head(d);
    std::uint32_t at = pos_[d ^ 1];  // position of this edge in rotation_[h]
    const auto& rot = rotation_[h];
    EdgeId f = rot[(at + 1) % rot.size()];
    return dart_from(f, h);
}

void PlanarGraph::set_rotations(std::vector<std::vector<EdgeId>> rot, bool check) {
    if (rot.size() != n()) throw ValidationError("rotation table size mismatch");
    for (NodeId u = 0; u < n(); ++u) {
        if (rot[u].size() != rotation_[u].size())
            throw ValidationError("rotation list has wrong degree");
        auto a = rot[u];
        auto b = rotation_[u];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) throw ValidationError("rotation list is not a permutation of incident edges");
    }
    rotation_ = std::move(rot);
    rebuild_positions();
    embedded_ = true;
    if (check) check_euler();
}

void PlanarGraph::rebuild_positions() {
    pos_.assign(2 * m(), 0);
    for (NodeId u = 0; u < n(); ++u) {
        const auto& rot = rotation_[u];
        for (std::uint32_t i = 0; i < rot.size(); ++i) {
            EdgeId e = rot[i];
            pos_[2 * std::uint64_t(e) + (edges_[e].u == u ? 0 : 1)] = i;
        }
    }
}

std::size_t PlanarGraph::face_count() const {
    std::vector<bool> seen(2 * m(), false);
    std::size_t faces = 0;
    for (std::uint64_t d = 0; d < 2 * m(); ++d) {
        if (seen[d]) continue;
        ++faces;
        std::uint64_t cur = d;
        while (!seen[cur]) {
            seen[cur] = true;
            cur = next_in_face(cur);
        }
    }
    return faces;
}

void PlanarGraph::check_euler() const {
    auto [comp, ncomp] = components();
    std::vector<std::int64_t> nodes(ncomp, 0), medges(ncomp, 0), faces(ncomp, 0);
    for (NodeId u = 0; u < n(); ++u) nodes[comp[u]]++;
    for (const Edge& e : edges_) medges[comp[e.u]]++;

    std::vector<bool> seen(2 * m(), false);
    for (std::uint64_t d = 0; d < 2 * m(); ++d) {
        if (seen[d]) continue;
        faces[comp[dart_tail(d)]]++;
        std::uint64_t cur = d;
        while (!seen[cur]) {
            seen[cur] = true;
            cur = next_in_face(cur);
        }
    }
    for (std::size_t c = 0; c < ncomp; ++c) {
        if (medges[c] == 0) continue;  // bare node, nothing to trace
        if (nodes[c] - medges[c] + faces[c] != 2)
            throw NonPlanarError("rotation system does not describe a plane embedding");
    }
}

std::pair<std::vector<std::uint32_t>, std::size_t> PlanarGraph::components() const {
    std::vector<std::uint32_t> comp(n(), UINT32_MAX);
    std::size_t ncomp = 0;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n(); ++s) {
        if (comp[s] != UINT32_MAX) continue;
        comp[s] = std::uint32_t(ncomp);
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (EdgeId e : rotation_[u]) {
                NodeId v = other(e, u);
                if (comp[v] == UINT32_MAX) {
                    comp[v] = std::uint32_t(ncomp);
                    stack.push_back(v);
                }
            }
        }
        ++ncomp;
    }
    return {std::move(comp), ncomp};
}

bool PlanarGraph::connected() const {
    if (n() == 0) return true;
    return components().second == 1;
}

PlanarGraph PlanarGraph::induced(const std::vector<NodeId>& nodes,
                                 std::vector<NodeId>* back_map,
                                 bool original_only) const {
    assert(std::is_sorted(nodes.begin(), nodes.end()) && "node list must be sorted");
    PlanarGraph sub(nodes.size());
    std::vector<NodeId> to_new(n(), kInvalidNode);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        assert(nodes[i] < n() && "node out of range");
        assert(to_new[nodes[i]] == kInvalidNode && "duplicate node");
        to_new[nodes[i]] = NodeId(i);
    }

    std::vector<EdgeId> edge_map(m(), kInvalidEdge);
    for (NodeId nu : nodes) {
        NodeId su = to_new[nu];
        for (EdgeId e : rotation_[nu]) {
            const Edge& ed = edges_[e];
            if (original_only && !ed.original) continue;
            NodeId nv = other(e, nu);
            if (to_new[nv] == kInvalidNode) continue;
            if (ed.u != nu) continue;  // visit each edge from its u side only
            edge_map[e] = EdgeId(sub.edges_.size());
            sub.edges_.push_back(Edge{su, to_new[nv], ed.w, ed.original});
        }
    }
    // rotation lists inherit the original cyclic order
    for (NodeId nu : nodes) {
        NodeId su = to_new[nu];
        for (EdgeId e : rotation_[nu])
            if (edge_map[e] != kInvalidEdge) sub.rotation_[su].push_back(edge_map[e]);
    }
    sub.rebuild_positions();
    sub.embedded_ = embedded_;
    if (back_map) *back_map = nodes;
    return sub;
}

Weight PlanarGraph::max_weight() const {
    Weight mx = 0;
    for (const Edge& e : edges_) mx = std::max(mx, e.w);
    return mx;
}

void PlanarGraph::validate() const {
    for (EdgeId e = 0; e < m(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.u >= n() || ed.v >= n()) throw ValidationError("edge endpoint out of range");
        if (ed.u == ed.v) throw ValidationError("self loop");
        if (ed.w < 0) throw ValidationError("negative edge weight");
    }
    for (NodeId u = 0; u < n(); ++u) {
        for (std::size_t i = 0; i < rotation_[u].size(); ++i) {
            EdgeId e = rotation_[u][i];
            if (e >= m()) throw ValidationError("rotation entry out of range");
            if (edges_[e].u != u && edges_[e].v != u)
                throw ValidationError("rotation entry not incident");
            for (std::size_t j = i + 1; j < rotation_[u].size(); ++j)
                if (other(rotation_[u][j], u) == other(e, u))
                    throw ValidationError("parallel edge");
        }
    }
}

}  // namespace planar

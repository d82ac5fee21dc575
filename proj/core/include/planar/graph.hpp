#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "planar/types.hpp"

namespace planar {

struct Edge {
    NodeId u = kInvalidNode;
    NodeId v = kInvalidNode;
    Weight w = 0;
    bool original = true;  // false for edges added by triangulation
};

// Undirected graph with an explicit rotation system (cyclic order of
// incident edges around every node).  Before an embedding is attached the
// rotation lists just hold insertion order and embedded() is false.
//
// Darts: edge e yields darts 2e (u -> v) and 2e+1 (v -> u).  Face walks
// follow next_in_face, which advances to the rotation successor at the
// head of the dart, so every dart lies on exactly one face cycle.
class PlanarGraph {
   public:
    PlanarGraph() = default;
    explicit PlanarGraph(std::size_t n) : rotation_(n) {}

    std::size_t n() const { return rotation_.size(); }
    std::size_t m() const { return edges_.size(); }

    NodeId add_node();
    EdgeId add_edge(NodeId u, NodeId v, Weight w, bool original = true);

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }

    // incident edges of u in rotation order
    const std::vector<EdgeId>& incident(NodeId u) const { return rotation_[u]; }
    std::size_t degree(NodeId u) const { return rotation_[u].size(); }

    NodeId other(EdgeId e, NodeId u) const {
        const Edge& ed = edges_[e];
        return ed.u == u ? ed.v : ed.u;
    }

    // kInvalidEdge when u and v are not adjacent
    EdgeId find_edge(NodeId u, NodeId v) const;

    // ---- darts ----

    static std::uint64_t dart(EdgeId e, int side) { return std::uint64_t(e) * 2 + side; }
    EdgeId dart_edge(std::uint64_t d) const { return EdgeId(d >> 1); }
    NodeId dart_tail(std::uint64_t d) const {
        const Edge& ed = edges_[d >> 1];
        return (d & 1) ? ed.v : ed.u;
    }
    NodeId dart_head(std::uint64_t d) const {
        const Edge& ed = edges_[d >> 1];
        return (d & 1) ? ed.u : ed.v;
    }
    static std::uint64_t reverse(std::uint64_t d) { return d ^ 1; }
    std::uint64_t dart_from(EdgeId e, NodeId tail) const {
        return dart(e, edges_[e].u == tail ? 0 : 1);
    }

    // rotation successor at the head; defined for any rotation system
    std::uint64_t next_in_face(std::uint64_t d) const;

    // ---- embedding ----

    bool embedded() const { return embedded_; }

    // Attach a rotation system.  Each list must be a permutation of the
    // current incident edges of its node.  With check=true the traced
    // faces are verified against the per-component face count a plane
    // embedding must have; failure raises NonPlanarError.
    void set_rotations(std::vector<std::vector<EdgeId>> rot, bool check = true);

    std::size_t face_count() const;

    // n - m + f == 2 per connected component that has at least one edge
    void check_euler() const;

    // ---- structure ----

    // component id per node plus the number of components
    std::pair<std::vector<std::uint32_t>, std::size_t> components() const;

    bool connected() const;

    // Subgraph induced by `nodes` (sorted, unique).  Node i of the result
    // corresponds to nodes[i]; back_map receives that list when non-null.
    // Rotation order is inherited, so an embedded graph stays embedded.
    // With original_only=true triangulation fill edges are dropped.
    PlanarGraph induced(const std::vector<NodeId>& nodes,
                        std::vector<NodeId>* back_map = nullptr,
                        bool original_only = false) const;

    Weight max_weight() const;

    // basic sanity: ids in range, no self loops, no parallel edges,
    // no negative weights
    void validate() const;

   private:
    void rebuild_positions();

    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> rotation_;
    // pos_[2e] = index of e in rotation_[u], pos_[2e+1] = index at v
    std::vector<std::uint32_t> pos_;
    bool embedded_ = false;
};

}  // namespace planar

#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "planar/graph.hpp"

namespace planar {

// Landmark set: every node of the graph is within distance `delta` of some
// landmark.  On unit-weight graphs the set has at most n/(delta+1) members
// (for delta < n); with integer weights the same bound holds against the
// node count of the graph with every edge e split into w(e) unit edges,
// up to one extra landmark forced by heavy edges.
struct DominatingSet {
    Weight delta = 0;
    std::vector<NodeId> landmarks;     // ascending node ids
    std::vector<NodeId> nearest;       // per node: closest landmark (lowest id on ties)
    std::vector<Weight> nearest_dist;  // per node: distance to that landmark
};

// Greedy selection on a shortest-path tree: repeatedly plant a landmark
// delta below the deepest leaf and prune everything it covers.
// Requires a connected graph and delta >= 0; throws ParameterError otherwise.
DominatingSet dominating_set(const PlanarGraph& g, Weight delta);

// number of nodes after splitting each edge into w(e) unit edges
Weight subdivided_node_count(const PlanarGraph& g);

// One subgraph of a cover: the set of nodes within `tree_depth` of `center`
// (a ball), carrying a shortest-path spanning tree of that depth.
struct CoverSubgraph {
    NodeId center = kInvalidNode;
    Weight tree_depth = 0;
    std::vector<NodeId> nodes;  // ascending
};

// One radius level.  Subgraphs are balls of radius 3r around centers that
// keep pairwise distance > 2r, so every node has a center within 2r and the
// whole r-ball around any node sits inside that center's subgraph.
struct CoverLevel {
    Weight radius = 0;  // r = 2^i
    std::vector<CoverSubgraph> subgraphs;
    // per-node membership rows (ascending subgraph ids), CSR layout
    std::vector<std::uint32_t> member_offset;
    std::vector<std::uint32_t> member_ids;

    std::size_t membership_count(NodeId v) const { return member_offset[v + 1] - member_offset[v]; }
};

struct CoverHierarchy {
    double eps = 0;
    Weight delta = 0;
    std::vector<CoverLevel> levels;  // level i is levels[i-1], radii 2, 4, 8, ...
    double rho = 0;                  // max tree_depth / radius over all subgraphs
    std::uint32_t degree_bound = 0;  // max memberships of any node at any level
};

// Builds one cover per level i = 1, 2, ... while 2^i <= ceil(2 * delta / eps).
// Guarantees per level: every node's closed 2^i-ball is contained in some
// subgraph; every subgraph has a spanning tree of depth <= rho * 2^i with
// rho <= 3.  degree_bound is measured, not assumed.
// Requires a connected graph, eps > 0, delta >= 0.
CoverHierarchy build_cover_hierarchy(const PlanarGraph& g, double eps, Weight delta);

// Lowest-id subgraph at `level` (1-based) containing both u and v, or -1.
// Intersects the two membership rows; constant time for bounded degree.
std::int32_t shared_subgraph(const CoverHierarchy& h, int level, NodeId u, NodeId v);

// per level: subgraph count, max membership, max tree depth
nlohmann::ordered_json cover_stats(const CoverHierarchy& h);

}  // namespace planar

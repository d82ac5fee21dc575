#pragma once

#include <vector>

#include "planar/graph.hpp"

namespace planar {

struct ShortestPathTree {
    NodeId root = kInvalidNode;
    std::vector<NodeId> parent;      // kInvalidNode at root / unreachable
    std::vector<EdgeId> parent_edge; // kInvalidEdge at root / unreachable
    std::vector<Weight> dist;        // kUnreachable where no path exists

    bool reachable(NodeId v) const { return dist[v] < kUnreachable; }
};

// Dijkstra; ties on the priority key settle the lowest node id first, so
// the tree is deterministic.
ShortestPathTree sssp(const PlanarGraph& g, NodeId source);

struct MultiSourceResult {
    std::vector<Weight> dist;     // distance to the closest source
    std::vector<NodeId> nearest;  // that source (lowest id on ties)
};

// one Dijkstra from a virtual super-source; ties prefer the source with
// the lowest node id, then the lowest node id
MultiSourceResult nearest_sources(const PlanarGraph& g, const std::vector<NodeId>& sources);

struct DiameterBounds {
    Weight lb = 0;  // largest distance seen in two sweeps
    Weight ub = 0;  // twice the eccentricity of node 0
};

// cheap bounds for a connected graph (two Dijkstra sweeps)
DiameterBounds diameter_bounds(const PlanarGraph& g);

}  // namespace planar

#pragma once

#include <array>
#include <vector>

#include "planar/graph.hpp"
#include "planar/shortest_path.hpp"

namespace planar {

// Balanced separation of a triangulated graph by three root paths of a
// shortest-path tree.  Returns nodes u, v, w such that removing every node
// of T(u), T(v) and T(w) (the tree paths from the root) leaves components
// whose weight is at most half the total.
//
// The choice is the weighted centroid face of the dual cotree; ties go to
// the smallest maximum component, then the smallest incident non-tree edge
// id, then the smallest face id, so the result is deterministic.
//
// g must be embedded, connected and triangulated (m == 3n - 6, n >= 3);
// t must be a shortest-path tree of g; weights are per node in [0, 1] and
// must not all be zero.  Violations raise ParameterError.
std::array<NodeId, 3> fundamental_cycle_separator(const PlanarGraph& g,
                                                  const ShortestPathTree& t,
                                                  const std::vector<double>& weights);

}  // namespace planar

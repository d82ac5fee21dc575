#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "planar/graph.hpp"
#include "planar/shortest_path.hpp"

namespace planar {

// One separator path: a contiguous segment of a root path of the global
// shortest-path tree, stored from the end nearest the root to the deep
// end.  Distances from the root are strictly increasing along it.
struct SeparatorPath {
    std::uint32_t path_id = 0;
    std::vector<NodeId> nodes;
    Weight length = 0;            // sum of edge weights along the segment
    std::uint32_t tree_level = 0; // depth of the owning split in the tree
};

// A piece of the division: its interior nodes plus references to the
// separator paths that bound it.  Interior sets of distinct pieces are
// disjoint; boundary path nodes are shared between neighbouring pieces.
struct Piece {
    std::uint32_t piece_id = 0;
    std::vector<NodeId> node_set;         // sorted interior nodes
    std::vector<std::uint32_t> boundary;  // sorted path ids
    std::int32_t parent = -1;             // decomposition tree node
};

// Decomposition tree node.  Split nodes record the three corner nodes
// whose root paths formed the cut plus the ids of the path segments that
// were new at that moment (-1 where the corner was already a separator).
// Region nodes group everything that fell into one component of a cut.
struct DivisionNode {
    std::int32_t parent = -1;
    std::uint32_t depth = 0;  // number of splits on the way from the root
    bool split = false;
    std::array<NodeId, 3> corners{kInvalidNode, kInvalidNode, kInvalidNode};
    std::array<std::int32_t, 3> chain_ids{-1, -1, -1};
};

struct DivisionStats {
    std::uint32_t steps = 0;
    std::uint32_t endpoint_steps = 0;
    std::uint32_t uniform_steps = 0;
    std::uint32_t forced_uniform_retries = 0;
    double max_balance_ratio = 0.0;  // worst component weight / total, <= 0.5
    std::uint32_t max_depth = 0;
    double depth_constant = 0.0;  // max_depth / log2(n)
    double piece_constant = 0.0;  // pieces * log2(n) / (n * eps)
};

// Shortest-path division of a connected embedded graph: a partition of
// the nodes into separator paths (all taken from one shortest-path tree
// rooted at node 0) and piece interiors, plus the tree of splits.
struct Division {
    PlanarGraph graph;  // the original graph, not the triangulation
    ShortestPathTree spt;
    std::vector<SeparatorPath> paths;
    std::vector<Piece> pieces;
    std::vector<DivisionNode> tree;
    std::vector<std::int32_t> path_anchor;    // path id -> tree node
    std::vector<std::int32_t> node_to_piece;  // -1 for separator nodes
    std::vector<std::int32_t> node_path;      // path id per node, -1 inside pieces
    double eps = 0.0;
    std::uint32_t boundary_cap = 0;
    std::uint32_t size_cap = 0;
    DivisionStats stats;
};

// Builds the division by repeated balanced separation: any piece with
// more than boundary_cap boundary paths is cut with weight on the
// endpoints of its boundary paths, any piece larger than size_cap with
// uniform weight on its nodes.  size_cap == 0 selects the default
// ceil(eps^-2 * log2 n), floored at 8 so single-digit graphs stay whole.
// g must be embedded and connected; eps must lie in (0, 1].
Division build_division(const PlanarGraph& g, double eps, std::uint32_t boundary_cap = 10,
                        std::uint32_t size_cap = 0);

// The separating triple at the least common ancestor of the two paths'
// positions in the decomposition tree: the full root paths T(u), T(v),
// T(w) of that split's corners.  Path ids reuse the segment ids created
// at the split and fall back to ids past paths.size() where the corner
// added no new segment.  qa and qb must belong to div.
std::vector<SeparatorPath> separating_triple(const Division& div, const SeparatorPath& qa,
                                             const SeparatorPath& qb);

// interior nodes plus all separator nodes adjacent to them, sorted
std::vector<NodeId> piece_closure(const Division& div, std::uint32_t piece_id);

// Diagnostic dump: one line per piece with its interior nodes and
// boundary path ids, one line per path with its nodes.
void write_division(const Division& div, std::ostream& os);

}  // namespace planar

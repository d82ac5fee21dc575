#pragma once

// Shared machinery for the separator and division builders: the face list
// of a triangulated embedding, the dual cotree (faces joined across
// non-tree edges), and the weighted centroid face.  Not installed.

#include <array>
#include <cstdint>
#include <vector>

#include "planar/graph.hpp"
#include "planar/shortest_path.hpp"

namespace planar::detail {

struct FaceStructure {
    // corner nodes of each face in walk order
    std::vector<std::array<NodeId, 3>> corners;
    std::vector<std::uint32_t> face_of_dart;
    // node -> lowest incident face id (weight assignment target)
    std::vector<std::uint32_t> node_face;

    struct Arc {
        std::uint32_t to;
        EdgeId via;
    };
    // cotree adjacency: one arc pair per non-tree edge of t
    std::vector<std::vector<Arc>> adj;
    // face -> smallest incident non-tree edge id, kInvalidEdge when none
    std::vector<EdgeId> min_arc;
};

// g must be triangulated and embedded, t a spanning shortest-path tree of
// it; raises BuildError if the dual arcs do not form a spanning cotree
FaceStructure build_face_structure(const PlanarGraph& g, const ShortestPathTree& t);

// face whose removal splits the cotree into parts of at most half the
// total assigned weight; returns its corner nodes
std::array<NodeId, 3> centroid_face_corners(const FaceStructure& fs,
                                            const std::vector<long double>& node_weight);

}  // namespace planar::detail

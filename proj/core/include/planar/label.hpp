#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "planar/graph.hpp"

namespace planar {

// One portal record: the owner knows its exact distance `dist` to `portal`,
// a node sitting at `offset` along separator path `path_id` of decomposition
// level `level`.  Offsets along one path subtract to exact path distances.
struct LabelEntry {
    std::uint32_t level = 0;
    std::uint32_t path_id = 0;
    NodeId portal = kInvalidNode;
    Weight offset = 0;
    Weight dist = 0;
};

// Distance label of one node: entries sorted by (path_id, offset).
// Two labels decode to a distance estimate within a 1+eps factor of the
// true distance, from the labels alone.
struct DistanceLabel {
    NodeId owner = kInvalidNode;
    double eps = 0;
    std::uint64_t build_id = 0;  // labels only combine within one build
    std::vector<LabelEntry> entries;
};

// Recursively separates the graph with shortest-path separators; every node
// stores, per separator path of every piece that contained it, a small
// portal set chosen so that routing through the best portal costs at most
// (1+eps) times the true distance to any node of that path.
// Requires an embedded connected graph and eps in (0, 1].
std::vector<DistanceLabel> build_labels(const PlanarGraph& g, double eps);

// Same decomposition, but only the listed nodes receive entries; the rest
// come back empty.  Meant for landmark subsets, where it is far cheaper.
std::vector<DistanceLabel> build_labels(const PlanarGraph& g, double eps,
                                        const std::vector<NodeId>& targets);

// min over shared paths of dist_a + |offset_a - offset_b| + dist_b.
// Never below the true distance; at most 1+eps above it.
// Throws ParameterError when the labels come from different builds.
Weight decode(const DistanceLabel& a, const DistanceLabel& b);

std::size_t max_label_entries(const std::vector<DistanceLabel>& labels);

// length-prefixed binary records, round-trips through read_labels
void write_labels(std::ostream& out, const std::vector<DistanceLabel>& labels);
std::vector<DistanceLabel> read_labels(std::istream& in);

}  // namespace planar

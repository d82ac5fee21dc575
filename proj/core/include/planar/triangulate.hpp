#pragma once

#include "planar/graph.hpp"

namespace planar {

// Adds chords until every face of the embedding has exactly three sides.
// Fill edges carry weight 1 + n * max_weight so they never shorten any
// distance, and are flagged as not original.  Node ids are unchanged.
// Requires an embedded, connected graph; graphs with fewer than three
// nodes are returned as they are.
PlanarGraph triangulate(const PlanarGraph& g);

}  // namespace planar

#pragma once

#include "planar/graph.hpp"

namespace planar {

// Attaches a planar rotation system to g, or throws NonPlanarError.
// Deterministic for a fixed input graph.
void embed(PlanarGraph& g);

// m <= 3n - 6 style counting check plus a full embedding attempt
bool is_planar(const PlanarGraph& g);

}  // namespace planar

#pragma once

#include <cstdint>
#include <string>

#include "planar/graph.hpp"

namespace planar {

// rows x cols grid, unit weights, embedded by construction
PlanarGraph make_grid(std::size_t rows, std::size_t cols);

// grid with weights drawn uniformly from [1, max_w]
PlanarGraph make_weighted_grid(std::size_t rows, std::size_t cols, Weight max_w,
                               std::uint64_t seed);

// grid with round(delete_fraction * m) edges removed; deletions that
// disconnect the grid are redrawn a bounded number of times
PlanarGraph make_deleted_grid(std::size_t rows, std::size_t cols, double delete_fraction,
                              std::uint64_t seed);

// "grid:RxC", "wgrid:RxC:MAXW:SEED", "delgrid:RxC:FRAC:SEED"
PlanarGraph generate_from_description(const std::string& desc);

}  // namespace planar

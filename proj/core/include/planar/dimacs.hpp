#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "planar/graph.hpp"

namespace planar {

// 9th DIMACS Implementation Challenge shortest-path format.
//
//   c <comment>
//   p sp <n> <arc count>
//   a <u> <v> <w>          (1-based node ids)
//
// Undirected edges are encoded as paired arcs; a single arc per edge is
// also accepted.  Duplicate arcs must agree on the weight.  The result
// carries no embedding.
PlanarGraph parse_dimacs(std::string_view text);
PlanarGraph load_dimacs(const std::string& path);

// paired arcs in edge order, so parse(serialize(g)) reproduces g
std::string serialize_dimacs(const PlanarGraph& g);
void save_dimacs(const PlanarGraph& g, const std::string& path);

// Embedding sidecar: line i holds the neighbors of node i (1-based ids)
// in cyclic order.  apply_embedding turns that into a rotation system and
// validates it.
std::vector<std::vector<NodeId>> parse_embedding(std::string_view text);
void apply_embedding(PlanarGraph& g, const std::vector<std::vector<NodeId>>& cyclic);
void load_embedding(PlanarGraph& g, const std::string& path);
std::string serialize_embedding(const PlanarGraph& g);
void save_embedding(const PlanarGraph& g, const std::string& path);

// true when every edge weight is a positive integer (minimum weight 1 is
// the scale all approximation guarantees are stated at)
bool normalized(const PlanarGraph& g);

}  // namespace planar

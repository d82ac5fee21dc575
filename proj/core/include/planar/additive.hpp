#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <json.hpp>

#include "planar/division.hpp"
#include "planar/exact_oracle.hpp"
#include "planar/graph.hpp"

namespace planar {

// Portal cover of one separator path: path nodes snapped onto a distance
// grid of step `spacing`, so every path node has a portal at or past it
// within spacing - 1.  Each portal stores exact level-graph distances to
// the portals of every path cut at its own split or at a split above it
// (its own path included), which is enough to connect any two covers that
// share a chain of splits.
struct PortalCover {
    std::uint32_t path_id = 0;
    Weight spacing = 1;
    std::vector<NodeId> portals;  // root end first, offsets strictly increasing
    std::vector<Weight> offsets;  // distance from the path's root end

    // visible paths (sorted ids), their column ranges, and the flat
    // distance table: row = own portal, column = visible portal
    std::vector<std::uint32_t> anc_paths;
    std::vector<std::uint32_t> anc_base;  // size anc_paths.size() + 1
    std::vector<Weight> table;            // portals.size() x anc_base.back()
};

struct AdditiveConfig {
    std::uint32_t boundary_cap = 10;
    // division piece size cap; 0 picks the default ceil(eps^-2 * log2 n)
    std::uint32_t size_cap = 0;
    // pieces at or under this size answer by on-demand search instead of
    // recursing; 0 picks ceil(eps^-2)
    std::uint32_t tiny_cap = 0;
    // whole levels at or under this size skip the division machinery and
    // answer from a cached exact search; 0 keeps every level on portals
    std::uint32_t exact_cap = 0;
    std::size_t exact_cache_sources = 64;
    bool validate_diameter = true;
    bool exact_diameter = false;  // check every eccentricity, not a sample
    std::uint32_t diameter_samples = 32;
    std::uint64_t seed = 0x95eed5;
};

struct AdditiveQueryStats {
    std::uint64_t levels_visited = 0;
    std::uint64_t portal_pairs_scanned = 0;
};

// Fixed-scale approximate oracle: for a connected graph of weighted
// diameter at most diameter_factor * delta, estimates are real walk
// lengths within d + 6 * eps * delta.  Queries combine, per recursion
// level, exact node-to-boundary-portal rows with portal-to-portal tables,
// and recurse into the piece shared by both endpoints.
struct AdditiveOracle {
    Weight delta = 0;
    double diameter_factor = 1.0;
    double eps = 1.0;
    Weight spacing = 1;
    std::uint32_t tiny_cap = 1;
    std::uint32_t depth = 1;
    bool exact_only = false;

    // exact levels only: the level graph and a cached search over it
    std::unique_ptr<PlanarGraph> graph;
    std::unique_ptr<ExactOracle> exact;

    Division division;  // empty on exact levels
    std::vector<PortalCover> covers;

    // ---- flat query tables, portal levels only ----
    std::vector<std::uint32_t> cover_base;   // path id -> first global portal id
    std::vector<NodeId> portal_nodes;        // by global portal id
    std::vector<std::uint32_t> portal_path;  // by global portal id
    // position of a node along its path, or within its piece interior
    std::vector<std::uint32_t> node_pos;
    std::vector<std::vector<Weight>> path_rows;  // per path: nodes x own portals
    std::vector<std::vector<std::uint32_t>> piece_gids;  // per piece: boundary portals
    std::vector<std::vector<Weight>> piece_rows;  // per piece: interior x boundary
    std::vector<std::vector<std::uint32_t>> split_segments;  // per tree node

    // ---- pieces ----
    std::vector<std::vector<NodeId>> closures;  // interior + adjacent separator
    std::vector<PlanarGraph> piece_graphs;      // on-demand pieces only
    std::vector<std::unique_ptr<AdditiveOracle>> sub_oracles;

    const PlanarGraph& level_graph() const { return exact_only ? *graph : division.graph; }
};

// Builds the oracle for length scale delta on a connected embedded graph
// with weighted diameter <= diameter_factor * delta (validated by two
// sweeps plus sampled eccentricities unless disabled).  eps in (0, 1].
AdditiveOracle build_additive(const PlanarGraph& g, Weight delta, double diameter_factor,
                              double eps);
AdditiveOracle build_additive(const PlanarGraph& g, Weight delta, double diameter_factor,
                              double eps, const AdditiveConfig& cfg);

// estimate in [d(u, v), d(u, v) + 6 * eps * delta]
Weight query_additive(const AdditiveOracle& o, NodeId u, NodeId v);
Weight query_additive(const AdditiveOracle& o, NodeId u, NodeId v, AdditiveQueryStats& qs);

// exact distance inside an on-demand piece's graph (interior plus its
// adjacent separator nodes); p must be such a piece of o's division
Weight tiny_piece_query(const AdditiveOracle& o, const Piece& p, NodeId u, NodeId v);

// stored values across the recursion, in words
std::size_t additive_space_words(const AdditiveOracle& o);

// per recursion level: piece/portal/stored-distance counts and a bytes
// estimate
nlohmann::ordered_json additive_stats(const AdditiveOracle& o);

}  // namespace planar

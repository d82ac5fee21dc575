#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <json.hpp>

#include "planar/additive.hpp"
#include "planar/cover.hpp"
#include "planar/graph.hpp"
#include "planar/label.hpp"
#include "planar/oracle.hpp"

namespace planar {

// Two-regime oracle.  Long pairs route through the nearest landmark and a
// landmark-to-landmark label estimate, staying within 1+6*eps once the
// distance passes eps^-1 * delta.  Short pairs are certified by the lowest
// ball-cover level the endpoints share: both sit in one subgraph whose
// spanning tree bounds their distance, giving at most 4*rho stretch.
struct ConstOracle {
    double eps = 0.5;
    WeightClass weights;
    Weight delta = 0;  // landmark domination radius
    DominatingSet landmarks;
    // indexed by node id; only landmark ids carry entries
    std::vector<DistanceLabel> labels;
    CoverHierarchy hierarchy;  // levels clipped at the graph diameter
    double rho = 1.0;          // achieved max tree-depth / radius
};

ConstOracle build_const(const PlanarGraph& g, const WeightClass& wc);
ConstOracle build_const(const PlanarGraph& g, const WeightClass& wc, const OracleConfig& cfg);

// min of the landmark route and the cover certificate; 0 when u == v
Weight query_const(const ConstOracle& o, NodeId u, NodeId v);

std::size_t const_space_words(const ConstOracle& o);
nlohmann::ordered_json const_stats(const ConstOracle& o);

// (1+eps) oracle.  The constant-stretch skeleton runs at eps/6 and finds
// the distance scale; each cover subgraph carries a fixed-scale additive
// oracle at eps/12 whose error at the first level with 2^i >= d is at most
// eps * d.  A query scans a small window of levels around the located one
// and keeps the minimum, together with the landmark route.  Polynomial
// mode locates the level from whole-graph labels built at eps = 1/2
// instead of searching the cover levels.
struct EpsOracle {
    double eps_user = 0.25;
    WeightClass weights;
    bool polynomial = false;
    double eps_base = 0;      // eps_user / const_divisor
    double eps_additive = 0;  // eps_user / additive_divisor
    int window_up = 1;        // ceil(log2(2 * rho)) + configured extra
    int window_down = 0;      // polynomial mode: label overshoot margin

    ConstOracle base;
    std::vector<DistanceLabel> level_labels;  // polynomial mode only

    // additive oracles per cover subgraph, deduplicated by node set;
    // slot[level-1][j] indexes the pool
    std::vector<std::unique_ptr<AdditiveOracle>> pool;
    std::vector<std::vector<std::uint32_t>> slot;
};

EpsOracle build_eps(const PlanarGraph& g, double eps_user, const WeightClass& wc);
EpsOracle build_eps(const PlanarGraph& g, double eps_user, const WeightClass& wc,
                    const OracleConfig& cfg);

// estimate in [d, (1 + eps_user) * d]; 0 when u == v
Weight query_eps(const EpsOracle& o, NodeId u, NodeId v);

std::size_t eps_space_words(const EpsOracle& o);
nlohmann::ordered_json eps_stats(const EpsOracle& o);

}  // namespace planar

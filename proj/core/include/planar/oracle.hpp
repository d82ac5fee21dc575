#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <json.hpp>

#include "planar/graph.hpp"

namespace planar {

enum class OracleKind {
    exact,          // Dijkstra baseline, memoized
    const_stretch,  // landmarks + labels + cover certificate
    eps_moderate,   // (1+eps), weight sum O(n log^theta n)
    eps_poly,       // (1+eps), polynomially bounded weights
    additive,       // additive stretch eps*Delta at fixed scale Delta
};

const char* to_string(OracleKind k);
OracleKind oracle_kind_from_string(const std::string& s);

struct WeightClass {
    enum Kind { unit, moderate, polynomial };
    Kind kind = unit;
    double theta = 0.0;  // moderate: weight sum <= c * n * log^theta n
};

// measured constant c with weight sum = c * n * log2^theta n (0 for n < 2)
double measure_weight_constant(const PlanarGraph& g, double theta);

struct OracleConfig {
    OracleKind kind = OracleKind::exact;
    Rational eps{1, 4};
    WeightClass weights;

    // additive oracle only: length scale and diameter factor (diam <= C*Delta)
    Weight additive_delta = 0;
    double diameter_factor = 0.0;

    // ---- tuning knobs, defaults are the analyzed budget split ----

    // long-range structures run at eps/const_divisor
    std::int64_t const_divisor = 6;
    // per-level additive oracles run at eps/additive_divisor; 12 makes the
    // additive error at the first level with 2^i >= d at most eps*d
    std::int64_t additive_divisor = 12;
    // levels above the lowest shared one that a query also inspects,
    // beyond ceil(log2(2*rho)); one extra level absorbs the ceiling slack
    int level_window_extra = 1;
    // dominating-set distance override (0 = formula)
    Weight delta_override = 0;
    // subgraphs at or under this size skip the division machinery and
    // answer from on-demand exact searches
    std::size_t exact_threshold = 1024;
    // hard cap on division piece size, keeps portal tables bounded
    std::size_t max_piece = 4096;
    // per-oracle cache of exact search results (sources kept, LRU)
    std::size_t exact_cache_sources = 64;
};

class DistanceOracle {
   public:
    virtual ~DistanceOracle() = default;

    // estimate of d(u, v); never below the true distance,
    // kUnreachable when u and v are disconnected
    virtual Weight distance(NodeId u, NodeId v) const = 0;

    virtual OracleKind kind() const = 0;

    // stored integers (space in words, language-neutral)
    virtual std::size_t space_words() const = 0;

    // space breakdown and structure counters
    virtual nlohmann::ordered_json stats() const = 0;
};

// builds the requested oracle; the graph must outlive the oracle
std::unique_ptr<DistanceOracle> build_oracle(const PlanarGraph& g, const OracleConfig& cfg);

}  // namespace planar

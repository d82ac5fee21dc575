#pragma once

#include <list>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "planar/oracle.hpp"

namespace planar {

// Ground-truth oracle: on-demand Dijkstra with an LRU cache of recent
// source distance arrays.  Query results never depend on cache state.
class ExactOracle : public DistanceOracle {
   public:
    explicit ExactOracle(const PlanarGraph& g, std::size_t cache_sources = 64);

    Weight distance(NodeId u, NodeId v) const override;
    OracleKind kind() const override { return OracleKind::exact; }
    std::size_t space_words() const override;
    nlohmann::ordered_json stats() const override;

    // whole row d(source, *); copied out so later queries cannot
    // invalidate it
    std::vector<Weight> row(NodeId source) const;

   private:
    const PlanarGraph& g_;
    std::size_t cap_;

    mutable std::mutex mu_;
    mutable std::list<std::pair<NodeId, std::vector<Weight>>> lru_;
    mutable std::unordered_map<NodeId, decltype(lru_)::iterator> index_;
    mutable std::size_t searches_ = 0;
    mutable std::size_t queries_ = 0;
};

}  // namespace planar

#include "planar/exact_oracle.hpp"

#include "planar/shortest_path.hpp"

namespace planar {

ExactOracle::ExactOracle(const PlanarGraph& g, std::size_t cache_sources)
    : g_(g), cap_(cache_sources == 0 ? 1 : cache_sources) {}

Weight ExactOracle::distance(NodeId u, NodeId v) const {
    if (u >= g_.n() || v >= g_.n()) throw ParameterError("query node out of range");
    if (u == v) return 0;
    std::lock_guard<std::mutex> lock(mu_);
    ++queries_;
    // canonical source keeps the cache effective for symmetric workloads
    NodeId s = std::min(u, v), t = std::max(u, v);
    auto it = index_.find(s);
    if (it == index_.end()) {
        ++searches_;
        lru_.emplace_front(s, sssp(g_, s).dist);
        index_[s] = lru_.begin();
        if (lru_.size() > cap_) {
            index_.erase(lru_.back().first);
            lru_.pop_back();
        }
        it = index_.find(s);
    } else if (it->second != lru_.begin()) {
        lru_.splice(lru_.begin(), lru_, it->second);
    }
    return it->second->second[t];
}

std::vector<Weight> ExactOracle::row(NodeId source) const {
    if (source >= g_.n()) throw ParameterError("source out of range");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(source);
    if (it != index_.end()) return it->second->second;
    ++searches_;
    std::vector<Weight> d = sssp(g_, source).dist;
    lru_.emplace_front(source, d);
    index_[source] = lru_.begin();
    if (lru_.size() > cap_) {
        index_.erase(lru_.back().first);
        lru_.pop_back();
    }
    return d;
}

std::size_t ExactOracle::space_words() const {
    std::lock_guard<std::mutex> lock(mu_);
    return lru_.size() * g_.n();
}

nlohmann::ordered_json ExactOracle::stats() const {
    std::lock_guard<std::mutex> lock(mu_);
    nlohmann::ordered_json j;
    j["kind"] = "exact";
    j["nodes"] = g_.n();
    j["edges"] = g_.m();
    j["cached_sources"] = lru_.size();
    j["cache_capacity"] = cap_;
    j["searches"] = searches_;
    j["queries"] = queries_;
    j["space_words"] = lru_.size() * g_.n();
    return j;
}

}  // namespace planar

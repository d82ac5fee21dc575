#include "planar/oracle.hpp"

#include <cmath>
#include <utility>

#include "planar/additive.hpp"
#include "planar/exact_oracle.hpp"
#include "planar/stretch_oracles.hpp"

namespace planar {

const char* to_string(OracleKind k) {
    switch (k) {
        case OracleKind::exact:
            return "exact";
        case OracleKind::const_stretch:
            return "const";
        case OracleKind::eps_moderate:
            return "eps-moderate";
        case OracleKind::eps_poly:
            return "eps-poly";
        case OracleKind::additive:
            return "additive";
    }
    return "exact";
}

OracleKind oracle_kind_from_string(const std::string& s) {
    if (s == "exact") return OracleKind::exact;
    if (s == "const") return OracleKind::const_stretch;
    if (s == "eps-moderate") return OracleKind::eps_moderate;
    if (s == "eps-poly") return OracleKind::eps_poly;
    if (s == "additive") return OracleKind::additive;
    throw ParameterError("unknown oracle kind: " + s);
}

double measure_weight_constant(const PlanarGraph& g, double theta) {
    if (g.n() < 2) return 0.0;
    long double sum = 0;
    for (EdgeId e = 0; e < g.m(); ++e) sum += static_cast<long double>(g.edge(e).w);
    long double lg = std::log2(static_cast<long double>(g.n()));
    long double denom = static_cast<long double>(g.n()) * std::pow(lg, (long double)theta);
    return static_cast<double>(sum / denom);
}

namespace {

class ConstWrap : public DistanceOracle {
   public:
    explicit ConstWrap(ConstOracle o) : o_(std::move(o)) {}
    Weight distance(NodeId u, NodeId v) const override { return query_const(o_, u, v); }
    OracleKind kind() const override { return OracleKind::const_stretch; }
    std::size_t space_words() const override { return const_space_words(o_); }
    nlohmann::ordered_json stats() const override {
        nlohmann::ordered_json j = const_stats(o_);
        j["kind"] = to_string(kind());
        return j;
    }

   private:
    ConstOracle o_;
};

class EpsWrap : public DistanceOracle {
   public:
    explicit EpsWrap(EpsOracle o) : o_(std::move(o)) {}
    Weight distance(NodeId u, NodeId v) const override { return query_eps(o_, u, v); }
    OracleKind kind() const override {
        return o_.polynomial ? OracleKind::eps_poly : OracleKind::eps_moderate;
    }
    std::size_t space_words() const override { return eps_space_words(o_); }
    nlohmann::ordered_json stats() const override {
        nlohmann::ordered_json j = eps_stats(o_);
        j["kind"] = to_string(kind());
        return j;
    }

   private:
    EpsOracle o_;
};

class AdditiveWrap : public DistanceOracle {
   public:
    explicit AdditiveWrap(AdditiveOracle o) : o_(std::move(o)) {}
    Weight distance(NodeId u, NodeId v) const override { return query_additive(o_, u, v); }
    OracleKind kind() const override { return OracleKind::additive; }
    std::size_t space_words() const override { return additive_space_words(o_); }
    nlohmann::ordered_json stats() const override {
        nlohmann::ordered_json j = additive_stats(o_);
        j["kind"] = to_string(kind());
        return j;
    }

   private:
    AdditiveOracle o_;
};

}  // namespace

std::unique_ptr<DistanceOracle> build_oracle(const PlanarGraph& g, const OracleConfig& cfg) {
    switch (cfg.kind) {
        case OracleKind::exact:
            return std::make_unique<ExactOracle>(g, cfg.exact_cache_sources);
        case OracleKind::const_stretch:
            return std::make_unique<ConstWrap>(build_const(g, cfg.weights, cfg));
        case OracleKind::eps_moderate: {
            if (cfg.weights.kind == WeightClass::polynomial) {
                throw ParameterError("eps-moderate oracle: polynomial weights need eps-poly");
            }
            return std::make_unique<EpsWrap>(build_eps(g, cfg.eps.value(), cfg.weights, cfg));
        }
        case OracleKind::eps_poly: {
            WeightClass wc = cfg.weights;
            wc.kind = WeightClass::polynomial;
            return std::make_unique<EpsWrap>(build_eps(g, cfg.eps.value(), wc, cfg));
        }
        case OracleKind::additive: {
            if (cfg.diameter_factor <= 0.0) {
                throw ParameterError("additive oracle: diameter_factor must be positive");
            }
            AdditiveConfig acfg;
            acfg.exact_cache_sources = cfg.exact_cache_sources;
            return std::make_unique<AdditiveWrap>(build_additive(
                g, cfg.additive_delta, cfg.diameter_factor, cfg.eps.value(), acfg));
        }
    }
    throw ParameterError("unknown oracle kind");
}

}  // namespace planar

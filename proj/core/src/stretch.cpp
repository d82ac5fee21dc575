#include "planar/stretch_oracles.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <unordered_map>

#include "planar/shortest_path.hpp"

namespace planar {

namespace {

// portal grids narrower than this answer by cached exact search instead
constexpr Weight kMinPortalSpacing = 4;

// smallest l >= 1 with 2^l >= x
int ceil_log2(Weight x) {
    if (x <= 2) return 1;
    return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(x - 1)));
}

void validate_input(const PlanarGraph& g, const char* who) {
    if (g.n() == 0) throw ParameterError(std::string(who) + ": empty graph");
    if (!g.embedded()) throw ParameterError(std::string(who) + ": graph must be embedded");
    if (!g.connected()) throw ParameterError(std::string(who) + ": graph must be connected");
}

Weight domination_radius(const PlanarGraph& g, double eps, const WeightClass& wc,
                         Weight override_delta) {
    if (override_delta > 0) return override_delta;
    if (g.n() < 2) return 0;
    double lg = std::log2(static_cast<double>(g.n()));
    double power = wc.kind == WeightClass::moderate ? std::pow(lg, wc.theta + 1.0) : lg;
    return static_cast<Weight>(std::floor(power / eps));
}

double measured_rho(const CoverHierarchy& h) {
    double rho = 0;
    for (const auto& lvl : h.levels) {
        for (const auto& s : lvl.subgraphs) {
            double r = static_cast<double>(s.tree_depth) / static_cast<double>(lvl.radius);
            if (r > rho) rho = r;
        }
    }
    return rho > 0 ? rho : 1.0;
}

// lowest level whose cover puts u and v into one subgraph, 0 when none.
// Sharing is monotone in the distance sense only, so the binary search
// result is validated: walk down through shared levels, scan up if the
// landing level is unshared.
int lowest_shared_level(const CoverHierarchy& h, NodeId u, NodeId v) {
    int levels = static_cast<int>(h.levels.size());
    if (levels == 0) return 0;
    auto shares = [&](int lvl) { return shared_subgraph(h, lvl, u, v) >= 0; };
    int lo = 1, hi = levels;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (shares(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    while (lo <= levels && !shares(lo)) ++lo;
    if (lo > levels) return 0;
    while (lo > 1 && shares(lo - 1)) --lo;
    return lo;
}

Weight landmark_route(const ConstOracle& o, NodeId u, NodeId v) {
    NodeId lu = o.landmarks.nearest[u];
    NodeId lv = o.landmarks.nearest[v];
    if (lu == kInvalidNode || lv == kInvalidNode) return kUnreachable;
    Weight mid = lu == lv ? 0 : decode(o.labels[lu], o.labels[lv]);
    if (mid >= kUnreachable) return kUnreachable;
    return o.landmarks.nearest_dist[u] + mid + o.landmarks.nearest_dist[v];
}

std::size_t label_words(const std::vector<DistanceLabel>& labels) {
    std::size_t entries = 0;
    for (const auto& l : labels) entries += l.entries.size();
    // per entry: two distances plus three packed ids
    return entries * 2 + (entries * 3 + 1) / 2 + labels.size();
}

std::size_t hierarchy_words(const CoverHierarchy& h) {
    std::size_t ids = 0;
    std::size_t vals = 0;
    for (const auto& lvl : h.levels) {
        ids += lvl.member_ids.size() + lvl.member_offset.size();
        for (const auto& s : lvl.subgraphs) {
            ids += s.nodes.size() + 1;
            vals += 1;  // tree depth
        }
    }
    return vals + (ids + 1) / 2;
}

std::size_t landmark_words(const DominatingSet& ds) {
    return ds.nearest_dist.size() + (ds.nearest.size() + ds.landmarks.size() + 1) / 2;
}

std::uint64_t node_set_hash(const std::vector<NodeId>& nodes) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    mix(nodes.size());
    for (NodeId v : nodes) mix(v);
    return h;
}

ConstOracle build_const_impl(const PlanarGraph& g, const WeightClass& wc, double eps,
                             const OracleConfig& cfg) {
    validate_input(g, "const oracle");
    if (!(eps > 0.0) || eps > 1.0) {
        throw ParameterError("const oracle: eps must lie in (0, 1]");
    }
    ConstOracle o;
    o.eps = eps;
    o.weights = wc;
    o.delta = domination_radius(g, eps, wc, cfg.delta_override);
    o.landmarks = dominating_set(g, o.delta);
    o.labels = build_labels(g, eps, o.landmarks.landmarks);
    o.hierarchy = build_cover_hierarchy(g, eps, o.delta);
    // levels whose radius passes the diameter certify nothing new
    if (g.n() > 1 && !o.hierarchy.levels.empty()) {
        int diam_levels = ceil_log2(std::max<Weight>(2, diameter_bounds(g).ub));
        if (static_cast<int>(o.hierarchy.levels.size()) > diam_levels) {
            o.hierarchy.levels.resize(diam_levels);
        }
    }
    o.rho = measured_rho(o.hierarchy);
    return o;
}

// iterate subgraph ids shared by u and v at one level (ascending)
template <typename Fn>
void for_each_shared(const CoverLevel& lvl, NodeId u, NodeId v, Fn fn) {
    std::size_t i = lvl.member_offset[u], ie = lvl.member_offset[u + 1];
    std::size_t j = lvl.member_offset[v], je = lvl.member_offset[v + 1];
    while (i < ie && j < je) {
        std::uint32_t a = lvl.member_ids[i], b = lvl.member_ids[j];
        if (a < b) {
            ++i;
        } else if (b < a) {
            ++j;
        } else {
            fn(a);
            ++i;
            ++j;
        }
    }
}

}  // namespace

ConstOracle build_const(const PlanarGraph& g, const WeightClass& wc) {
    OracleConfig cfg;
    cfg.eps = Rational{1, 2};
    return build_const(g, wc, cfg);
}

ConstOracle build_const(const PlanarGraph& g, const WeightClass& wc, const OracleConfig& cfg) {
    if (wc.kind == WeightClass::polynomial) {
        throw ParameterError(
            "const oracle: polynomial weights need the eps oracle in polynomial mode");
    }
    return build_const_impl(g, wc, cfg.eps.value(), cfg);
}

Weight query_const(const ConstOracle& o, NodeId u, NodeId v) {
    const std::size_t n = o.landmarks.nearest.size();
    if (u >= n || v >= n) throw ParameterError("const oracle: node out of range");
    if (u == v) return 0;
    Weight best = landmark_route(o, u, v);
    int lvl = lowest_shared_level(o.hierarchy, u, v);
    if (lvl > 0) {
        std::int32_t s = shared_subgraph(o.hierarchy, lvl, u, v);
        Weight cert = 2 * o.hierarchy.levels[lvl - 1].subgraphs[s].tree_depth;
        best = std::min(best, cert);
    }
    return best;
}

std::size_t const_space_words(const ConstOracle& o) {
    return landmark_words(o.landmarks) + label_words(o.labels) + hierarchy_words(o.hierarchy);
}

nlohmann::ordered_json const_stats(const ConstOracle& o) {
    nlohmann::ordered_json j;
    j["eps"] = o.eps;
    j["delta"] = o.delta;
    j["landmarks"] = o.landmarks.landmarks.size();
    j["rho"] = o.rho;
    j["levels"] = o.hierarchy.levels.size();
    j["degree_bound"] = o.hierarchy.degree_bound;
    j["max_label_entries"] = max_label_entries(o.labels);
    j["space_words"] = nlohmann::ordered_json{{"landmarks", landmark_words(o.landmarks)},
                                              {"labels", label_words(o.labels)},
                                              {"covers", hierarchy_words(o.hierarchy)},
                                              {"total", const_space_words(o)}};
    return j;
}

EpsOracle build_eps(const PlanarGraph& g, double eps_user, const WeightClass& wc) {
    return build_eps(g, eps_user, wc, OracleConfig{});
}

EpsOracle build_eps(const PlanarGraph& g, double eps_user, const WeightClass& wc,
                    const OracleConfig& cfg) {
    validate_input(g, "eps oracle");
    if (!(eps_user > 0.0) || eps_user > 1.0) {
        throw ParameterError("eps oracle: eps must lie in (0, 1]");
    }
    if (cfg.const_divisor < 1 || cfg.additive_divisor < 1) {
        throw ParameterError("eps oracle: divisors must be positive");
    }
    EpsOracle o;
    o.eps_user = eps_user;
    o.weights = wc;
    o.polynomial = wc.kind == WeightClass::polynomial;
    o.eps_base = eps_user / static_cast<double>(cfg.const_divisor);
    o.eps_additive = eps_user / static_cast<double>(cfg.additive_divisor);

    OracleConfig base_cfg = cfg;
    WeightClass base_wc = wc;
    if (o.polynomial) {
        // levels alone answer every finite distance here, so the landmark
        // half only needs to exist: one diameter-wide landmark suffices
        base_wc.kind = WeightClass::unit;
        base_cfg.delta_override = std::max<Weight>(1, diameter_bounds(g).ub);
    }
    o.base = build_const_impl(g, base_wc, o.eps_base, base_cfg);

    o.window_up = static_cast<int>(std::ceil(std::log2(2.0 * std::max(1.0, o.base.rho)))) +
                  cfg.level_window_extra;
    o.window_down = o.polynomial ? 2 : 0;

    if (o.polynomial) o.level_labels = build_labels(g, 0.5);

    // one additive oracle per distinct subgraph node set; levels ascend,
    // so each set is built at its smallest scale
    const CoverHierarchy& h = o.base.hierarchy;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> seen;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> origin;  // pool id -> level, subgraph
    o.slot.resize(h.levels.size());
    for (std::size_t li = 0; li < h.levels.size(); ++li) {
        const CoverLevel& lvl = h.levels[li];
        o.slot[li].resize(lvl.subgraphs.size());
        for (std::size_t j = 0; j < lvl.subgraphs.size(); ++j) {
            const std::vector<NodeId>& nodes = lvl.subgraphs[j].nodes;
            std::uint64_t key = node_set_hash(nodes);
            std::uint32_t found = static_cast<std::uint32_t>(o.pool.size());
            for (std::uint32_t cand : seen[key]) {
                const auto& org = origin[cand];
                if (h.levels[org.first].subgraphs[org.second].nodes == nodes) {
                    found = cand;
                    break;
                }
            }
            if (found < o.pool.size()) {
                o.slot[li][j] = found;
                continue;
            }
            Weight delta = static_cast<Weight>(1) << (li + 1);
            AdditiveConfig acfg;
            acfg.validate_diameter = false;
            acfg.exact_cache_sources = cfg.exact_cache_sources;
            long double sp = std::ceil(static_cast<long double>(o.eps_additive) *
                                       static_cast<long double>(delta));
            if (nodes.size() <= cfg.exact_threshold ||
                static_cast<Weight>(sp) < kMinPortalSpacing) {
                acfg.exact_cap = static_cast<std::uint32_t>(nodes.size());
            } else {
                acfg.exact_cap = static_cast<std::uint32_t>(cfg.exact_threshold);
                long double scap = std::ceil(std::log2(static_cast<long double>(nodes.size())) /
                                             (static_cast<long double>(o.eps_additive) *
                                              o.eps_additive));
                if (scap > static_cast<long double>(cfg.max_piece)) {
                    acfg.size_cap = static_cast<std::uint32_t>(cfg.max_piece);
                }
            }
            double factor = 2.0 * std::max(1.0, o.base.rho);
            PlanarGraph sg = g.induced(nodes);
            auto oracle = std::make_unique<AdditiveOracle>(
                build_additive(sg, delta, factor, o.eps_additive, acfg));
            o.slot[li][j] = static_cast<std::uint32_t>(o.pool.size());
            seen[key].push_back(static_cast<std::uint32_t>(o.pool.size()));
            origin.push_back({static_cast<std::uint32_t>(li), static_cast<std::uint32_t>(j)});
            o.pool.push_back(std::move(oracle));
        }
    }
    return o;
}

Weight query_eps(const EpsOracle& o, NodeId u, NodeId v) {
    const std::size_t n = o.base.landmarks.nearest.size();
    if (u >= n || v >= n) throw ParameterError("eps oracle: node out of range");
    if (u == v) return 0;
    Weight best = landmark_route(o.base, u, v);
    const CoverHierarchy& h = o.base.hierarchy;
    int levels = static_cast<int>(h.levels.size());
    if (levels == 0) return best;

    int lo, hi;
    if (!o.polynomial) {
        int found = lowest_shared_level(h, u, v);
        if (found == 0) return best;
        lo = found;
        hi = std::min(levels, found + o.window_up);
    } else {
        Weight guess = decode(o.level_labels[u], o.level_labels[v]);
        if (guess == 0 || guess >= kUnreachable) return best;
        int center = ceil_log2(guess);
        lo = std::max(1, center - o.window_down);
        hi = std::min(levels, center + o.window_up);
    }
    for (int lvl = lo; lvl <= hi; ++lvl) {
        const CoverLevel& cl = h.levels[lvl - 1];
        for_each_shared(cl, u, v, [&](std::uint32_t j) {
            const std::vector<NodeId>& nodes = cl.subgraphs[j].nodes;
            auto iu = std::lower_bound(nodes.begin(), nodes.end(), u);
            auto iv = std::lower_bound(nodes.begin(), nodes.end(), v);
            assert(iu != nodes.end() && *iu == u && "membership row out of sync");
            assert(iv != nodes.end() && *iv == v && "membership row out of sync");
            const AdditiveOracle& a = *o.pool[o.slot[lvl - 1][j]];
            Weight est = query_additive(a, static_cast<NodeId>(iu - nodes.begin()),
                                        static_cast<NodeId>(iv - nodes.begin()));
            if (est < best) best = est;
        });
    }
    return best;
}

std::size_t eps_space_words(const EpsOracle& o) {
    std::size_t words = const_space_words(o.base) + label_words(o.level_labels);
    std::size_t slot_ids = 0;
    for (const auto& s : o.slot) slot_ids += s.size();
    words += (slot_ids + 1) / 2;
    for (const auto& p : o.pool) words += additive_space_words(*p);
    return words;
}

nlohmann::ordered_json eps_stats(const EpsOracle& o) {
    nlohmann::ordered_json j;
    j["eps"] = o.eps_user;
    j["mode"] = o.polynomial ? "polynomial" : "moderate";
    j["eps_base"] = o.eps_base;
    j["eps_additive"] = o.eps_additive;
    j["rho"] = o.base.rho;
    j["window_up"] = o.window_up;
    j["window_down"] = o.window_down;
    j["levels"] = o.base.hierarchy.levels.size();
    j["max_label_entries"] = max_label_entries(o.base.labels);
    j["cover_oracles"] = o.pool.size();
    std::size_t exact_levels = 0;
    for (const auto& p : o.pool) {
        if (p->exact_only) ++exact_levels;
    }
    j["exact_cover_oracles"] = exact_levels;
    std::size_t pool_words = 0;
    for (const auto& p : o.pool) pool_words += additive_space_words(*p);
    j["space_words"] =
        nlohmann::ordered_json{{"skeleton", const_space_words(o.base)},
                               {"level_labels", label_words(o.level_labels)},
                               {"cover_oracles", pool_words},
                               {"total", eps_space_words(o)}};
    return j;
}

}  // namespace planar

#include "planar/additive.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "planar/shortest_path.hpp"

namespace planar {

namespace {

Weight grid_spacing(double eps, Weight delta) {
    long double s = std::ceil(static_cast<long double>(eps) * static_cast<long double>(delta));
    Weight w = static_cast<Weight>(s);
    return w < 1 ? 1 : w;
}

std::uint32_t effective_tiny_cap(double eps, std::uint32_t override_cap) {
    if (override_cap > 0) return override_cap;
    long double t = std::ceil(1.0L / (static_cast<long double>(eps) * eps));
    return static_cast<std::uint32_t>(t);
}

// one sweep: farthest node from src (lowest id on ties), throwing when the
// eccentricity already exceeds the declared diameter bound
NodeId sweep_check(const PlanarGraph& g, NodeId src, long double bound) {
    ShortestPathTree t = sssp(g, src);
    NodeId far = src;
    Weight fd = 0;
    for (NodeId v = 0; v < g.n(); ++v) {
        if (t.dist[v] >= kUnreachable) continue;
        if (t.dist[v] > fd) {
            fd = t.dist[v];
            far = v;
        }
    }
    if (static_cast<long double>(fd) > bound) {
        throw BuildError("diameter exceeds diameter_factor * delta: d(" + std::to_string(src) +
                         ", " + std::to_string(far) + ") = " + std::to_string(fd) +
                         " > " + std::to_string(static_cast<double>(bound)));
    }
    return far;
}

void validate_diameter(const PlanarGraph& g, Weight delta, double factor,
                       const AdditiveConfig& cfg) {
    long double bound = static_cast<long double>(factor) * static_cast<long double>(delta);
    NodeId a = sweep_check(g, 0, bound);
    sweep_check(g, a, bound);
    if (cfg.exact_diameter) {
        for (NodeId v = 0; v < g.n(); ++v) sweep_check(g, v, bound);
        return;
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(g.n() - 1));
    std::uint32_t k = cfg.diameter_samples;
    if (k > g.n()) k = static_cast<std::uint32_t>(g.n());
    for (std::uint32_t i = 0; i < k; ++i) sweep_check(g, pick(rng), bound);
}

std::uint32_t local_id(const std::vector<NodeId>& sorted_nodes, NodeId v) {
    auto it = std::lower_bound(sorted_nodes.begin(), sorted_nodes.end(), v);
    assert(it != sorted_nodes.end() && *it == v && "node outside the sorted set");
    return static_cast<std::uint32_t>(it - sorted_nodes.begin());
}

bool contains_node(const std::vector<NodeId>& sorted_nodes, NodeId v) {
    return std::binary_search(sorted_nodes.begin(), sorted_nodes.end(), v);
}

// portals on one path: the last node at or before each grid line k*spacing,
// deduplicated; every path node ends up with a portal at or past it within
// spacing - 1, and the count stays at most ceil(length/spacing) + 1
void place_portals(const SeparatorPath& path, const ShortestPathTree& spt, Weight spacing,
                   PortalCover& out) {
    out.path_id = path.path_id;
    out.spacing = spacing;
    const std::size_t k = path.nodes.size();
    out.offsets.resize(k);
    Weight base = spt.dist[path.nodes.front()];
    for (std::size_t j = 0; j < k; ++j) {
        out.offsets[j] = spt.dist[path.nodes[j]] - base;
        assert((j == 0 || out.offsets[j] > out.offsets[j - 1]) && "path offsets not increasing");
    }
    Weight len = out.offsets.back();
    std::size_t j = 0;
    std::size_t last = k;  // sentinel: nothing placed yet
    std::vector<Weight> kept_offsets;
    for (Weight target = 0;; target += spacing) {
        if (target > len || target < 0) target = len;  // final line, overflow-safe
        while (j + 1 < k && out.offsets[j + 1] <= target) ++j;
        if (last != j) {
            out.portals.push_back(path.nodes[j]);
            kept_offsets.push_back(out.offsets[j]);
            last = j;
        }
        if (target == len) break;
    }
    out.offsets.swap(kept_offsets);
}

AdditiveOracle build_level(PlanarGraph g, Weight delta, double factor, double eps,
                           const AdditiveConfig& cfg);

void build_pieces(AdditiveOracle& o, const AdditiveConfig& cfg) {
    const Division& d = o.division;
    const std::size_t n = d.graph.n();
    const std::size_t k = d.pieces.size();
    o.closures.resize(k);
    o.piece_graphs.resize(k);
    o.sub_oracles.resize(k);
    AdditiveConfig sub_cfg = cfg;
    sub_cfg.validate_diameter = false;
    for (std::size_t p = 0; p < k; ++p) {
        std::vector<NodeId> closure = piece_closure(d, static_cast<std::uint32_t>(p));
        PlanarGraph pg = d.graph.induced(closure);
        bool tiny = d.pieces[p].node_set.size() <= o.tiny_cap;
        // recursing into pieces that barely shrink only piles up levels;
        // such pieces answer by on-demand search instead
        bool shrunk = closure.size() * 4 <= n * 3;
        if (!tiny && shrunk && pg.connected()) {
            AdditiveOracle sub = build_level(std::move(pg), o.delta, o.diameter_factor, o.eps,
                                             sub_cfg);
            o.sub_oracles[p] = std::make_unique<AdditiveOracle>(std::move(sub));
            if (o.sub_oracles[p]->depth + 1 > o.depth) o.depth = o.sub_oracles[p]->depth + 1;
        } else {
            o.piece_graphs[p] = std::move(pg);
        }
        o.closures[p] = std::move(closure);
    }
}

void build_tables(AdditiveOracle& o) {
    const Division& d = o.division;
    const ShortestPathTree& sp = d.spt;
    const std::size_t np = d.paths.size();

    // ---- portals per path ----
    o.covers.resize(np);
    o.cover_base.assign(np + 1, 0);
    for (std::size_t p = 0; p < np; ++p) {
        place_portals(d.paths[p], sp, o.spacing, o.covers[p]);
        o.cover_base[p + 1] =
            o.cover_base[p] + static_cast<std::uint32_t>(o.covers[p].portals.size());
    }
    const std::uint32_t total = o.cover_base[np];
    o.portal_nodes.resize(total);
    o.portal_path.resize(total);
    for (std::size_t p = 0; p < np; ++p) {
        for (std::size_t i = 0; i < o.covers[p].portals.size(); ++i) {
            o.portal_nodes[o.cover_base[p] + i] = o.covers[p].portals[i];
            o.portal_path[o.cover_base[p] + i] = static_cast<std::uint32_t>(p);
        }
    }

    // ---- path segments cut at each split ----
    o.split_segments.resize(d.tree.size());
    for (std::size_t i = 0; i < d.tree.size(); ++i) {
        if (!d.tree[i].split) continue;
        std::vector<std::uint32_t>& segs = o.split_segments[i];
        for (NodeId corner : d.tree[i].corners) {
            if (corner == kInvalidNode) continue;
            for (NodeId x = corner; x != kInvalidNode; x = sp.parent[x]) {
                assert(d.node_path[x] >= 0 && "corner root path off the separator");
                segs.push_back(static_cast<std::uint32_t>(d.node_path[x]));
            }
        }
        std::sort(segs.begin(), segs.end());
        segs.erase(std::unique(segs.begin(), segs.end()), segs.end());
    }

    // ---- visible paths per path: everything cut at or above its split ----
    for (std::size_t p = 0; p < np; ++p) {
        std::vector<std::uint32_t>& anc = o.covers[p].anc_paths;
        for (std::int32_t t = d.path_anchor[p]; t >= 0; t = d.tree[t].parent) {
            if (!d.tree[t].split) continue;
            const auto& segs = o.split_segments[t];
            anc.insert(anc.end(), segs.begin(), segs.end());
        }
        std::sort(anc.begin(), anc.end());
        anc.erase(std::unique(anc.begin(), anc.end()), anc.end());
        assert(std::binary_search(anc.begin(), anc.end(), static_cast<std::uint32_t>(p)) &&
               "own path missing from its split");
        o.covers[p].anc_base.assign(anc.size() + 1, 0);
        for (std::size_t i = 0; i < anc.size(); ++i) {
            o.covers[p].anc_base[i + 1] =
                o.covers[p].anc_base[i] +
                static_cast<std::uint32_t>(o.covers[anc[i]].portals.size());
        }
        o.covers[p].table.assign(o.covers[p].portals.size() * o.covers[p].anc_base.back(),
                                 kUnreachable);
    }

    // ---- node positions and per-piece portal lists ----
    o.node_pos.assign(d.graph.n(), 0);
    for (std::size_t p = 0; p < np; ++p) {
        for (std::size_t j = 0; j < d.paths[p].nodes.size(); ++j) {
            o.node_pos[d.paths[p].nodes[j]] = static_cast<std::uint32_t>(j);
        }
    }
    const std::size_t k = d.pieces.size();
    o.piece_gids.resize(k);
    o.piece_rows.resize(k);
    // per path: the pieces it bounds and the slot where its portals start
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> path_pieces(np);
    for (std::size_t p = 0; p < k; ++p) {
        const Piece& piece = d.pieces[p];
        for (std::size_t j = 0; j < piece.node_set.size(); ++j) {
            o.node_pos[piece.node_set[j]] = static_cast<std::uint32_t>(j);
        }
        std::vector<std::uint32_t>& gl = o.piece_gids[p];
        for (std::uint32_t pid : piece.boundary) {
            path_pieces[pid].push_back({static_cast<std::uint32_t>(p),
                                        static_cast<std::uint32_t>(gl.size())});
            for (std::uint32_t i = 0; i < o.covers[pid].portals.size(); ++i) {
                gl.push_back(o.cover_base[pid] + i);
            }
        }
        o.piece_rows[p].assign(piece.node_set.size() * gl.size(), kUnreachable);
    }
    o.path_rows.resize(np);
    for (std::size_t p = 0; p < np; ++p) {
        o.path_rows[p].assign(d.paths[p].nodes.size() * o.covers[p].portals.size(),
                              kUnreachable);
    }

    // ---- one search per portal fills rows and tables ----
    for (std::size_t p = 0; p < np; ++p) {
        PortalCover& cv = o.covers[p];
        const std::uint32_t width = cv.anc_base.back();
        const std::size_t cp = cv.portals.size();
        for (std::size_t i = 0; i < cp; ++i) {
            ShortestPathTree t = sssp(d.graph, cv.portals[i]);
            const auto& pn = d.paths[p].nodes;
            for (std::size_t j = 0; j < pn.size(); ++j) {
                o.path_rows[p][j * cp + i] = t.dist[pn[j]];
            }
            for (auto [pc, slot] : path_pieces[p]) {
                std::vector<Weight>& rows = o.piece_rows[pc];
                const std::size_t w = o.piece_gids[pc].size();
                const auto& ns = d.pieces[pc].node_set;
                for (std::size_t j = 0; j < ns.size(); ++j) {
                    rows[j * w + slot + i] = t.dist[ns[j]];
                }
            }
            for (std::size_t a = 0; a < cv.anc_paths.size(); ++a) {
                const PortalCover& av = o.covers[cv.anc_paths[a]];
                for (std::size_t j = 0; j < av.portals.size(); ++j) {
                    cv.table[i * width + cv.anc_base[a] + j] = t.dist[av.portals[j]];
                }
            }
        }
    }
}

AdditiveOracle build_level(PlanarGraph g, Weight delta, double factor, double eps,
                           const AdditiveConfig& cfg) {
    AdditiveOracle o;
    o.delta = delta;
    o.diameter_factor = factor;
    o.eps = eps;
    o.spacing = grid_spacing(eps, delta);
    o.tiny_cap = effective_tiny_cap(eps, cfg.tiny_cap);
    if (cfg.exact_cap > 0 && g.n() <= cfg.exact_cap) {
        o.exact_only = true;
        o.graph = std::make_unique<PlanarGraph>(std::move(g));
        o.exact = std::make_unique<ExactOracle>(*o.graph, cfg.exact_cache_sources);
        return o;
    }
    o.division = build_division(g, eps, cfg.boundary_cap, cfg.size_cap);
    build_tables(o);
    build_pieces(o, cfg);
    return o;
}

// distance between two global portal ids, read from whichever cover's
// table can see the other path; visibility sets along one chain of splits
// are totally ordered, so one direction always resolves
Weight portal_distance(const AdditiveOracle& o, std::uint32_t cg, std::uint32_t qg) {
    std::uint32_t cp = o.portal_path[cg];
    std::uint32_t qp = o.portal_path[qg];
    const PortalCover& cc = o.covers[cp];
    auto it = std::lower_bound(cc.anc_paths.begin(), cc.anc_paths.end(), qp);
    if (it != cc.anc_paths.end() && *it == qp) {
        std::size_t a = static_cast<std::size_t>(it - cc.anc_paths.begin());
        return cc.table[(cg - o.cover_base[cp]) * cc.anc_base.back() + cc.anc_base[a] +
                        (qg - o.cover_base[qp])];
    }
    const PortalCover& qc = o.covers[qp];
    auto jt = std::lower_bound(qc.anc_paths.begin(), qc.anc_paths.end(), cp);
    assert(jt != qc.anc_paths.end() && *jt == cp && "portal paths share no split chain");
    std::size_t a = static_cast<std::size_t>(jt - qc.anc_paths.begin());
    return qc.table[(qg - o.cover_base[qp]) * qc.anc_base.back() + qc.anc_base[a] +
                    (cg - o.cover_base[cp])];
}

std::int32_t tree_position(const Division& d, NodeId v) {
    std::int32_t piece = d.node_to_piece[v];
    if (piece >= 0) return d.pieces[piece].parent;
    std::int32_t path = d.node_path[v];
    assert(path >= 0 && "node neither interior nor on a path");
    return d.path_anchor[path];
}

void chain_to_root(const Division& d, std::int32_t t, std::vector<std::int32_t>& out) {
    out.clear();
    for (; t >= 0; t = d.tree[t].parent) out.push_back(t);
    std::reverse(out.begin(), out.end());  // root first
}

Weight on_demand_distance(const AdditiveOracle& o, std::uint32_t piece, NodeId u, NodeId v) {
    const std::vector<NodeId>& cl = o.closures[piece];
    NodeId lu = local_id(cl, u);
    NodeId lv = local_id(cl, v);
    return sssp(o.piece_graphs[piece], lu).dist[lv];
}

struct Candidates {
    const std::uint32_t* gids = nullptr;
    const Weight* row = nullptr;
    std::size_t count = 0;
};

Candidates candidate_portals(const AdditiveOracle& o, NodeId v) {
    Candidates c;
    const Division& d = o.division;
    std::int32_t piece = d.node_to_piece[v];
    if (piece >= 0) {
        const auto& gl = o.piece_gids[piece];
        c.gids = gl.data();
        c.count = gl.size();
        if (c.count > 0) c.row = &o.piece_rows[piece][o.node_pos[v] * c.count];
        return c;
    }
    std::int32_t path = d.node_path[v];
    assert(path >= 0 && "node neither interior nor on a path");
    // gids stays null: path portals form a contiguous range at cover_base[path]
    c.count = o.covers[path].portals.size();
    if (c.count > 0) c.row = &o.path_rows[path][o.node_pos[v] * c.count];
    return c;
}

Weight query_impl(const AdditiveOracle& o, NodeId u, NodeId v, AdditiveQueryStats& qs);

// minimize row[c] + d(portal c, pivot q) over the candidate set into acc
void fold_candidates(const AdditiveOracle& o, const Candidates& c, std::uint32_t first_gid,
                     const std::vector<std::uint32_t>& pivots, std::vector<Weight>& acc) {
    for (std::size_t i = 0; i < c.count; ++i) {
        Weight t = c.row[i];
        if (t >= kUnreachable) continue;
        std::uint32_t gid = c.gids ? c.gids[i] : first_gid + static_cast<std::uint32_t>(i);
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            Weight w = portal_distance(o, gid, pivots[k]);
            if (w >= kUnreachable) continue;
            if (t + w < acc[k]) acc[k] = t + w;
        }
    }
}

Weight query_impl(const AdditiveOracle& o, NodeId u, NodeId v, AdditiveQueryStats& qs) {
    if (u == v) return 0;
    ++qs.levels_visited;
    if (o.exact_only) return o.exact->distance(u, v);
    const Division& d = o.division;
    Weight best = kUnreachable;

    std::int32_t pu = d.node_to_piece[u];
    std::int32_t pv = d.node_to_piece[v];
    if (pu >= 0 && pu == pv) {
        if (o.sub_oracles[pu]) {
            const std::vector<NodeId>& cl = o.closures[pu];
            best = query_impl(*o.sub_oracles[pu], local_id(cl, u), local_id(cl, v), qs);
        } else {
            best = on_demand_distance(o, static_cast<std::uint32_t>(pu), u, v);
        }
    }

    Candidates cu = candidate_portals(o, u);
    Candidates cv = candidate_portals(o, v);
    if (cu.count == 0 || cv.count == 0) return best;
    std::uint32_t first_u = pu < 0 ? o.cover_base[d.node_path[u]] : 0;
    std::uint32_t first_v = pv < 0 ? o.cover_base[d.node_path[v]] : 0;

    // splits shared by both positions: everything from the root down to
    // the least common ancestor in the decomposition tree
    static thread_local std::vector<std::int32_t> chain_u, chain_v;
    chain_to_root(d, tree_position(d, u), chain_u);
    chain_to_root(d, tree_position(d, v), chain_v);
    std::size_t common = 0;
    while (common < chain_u.size() && common < chain_v.size() &&
           chain_u[common] == chain_v[common]) {
        ++common;
    }
    if (common == 0) return best;

    static thread_local std::vector<std::uint32_t> pivots;
    static thread_local std::vector<std::uint32_t> seen_paths;
    pivots.clear();
    seen_paths.clear();
    for (std::size_t i = 0; i < common; ++i) {
        std::int32_t t = chain_u[i];
        if (!d.tree[t].split) continue;
        for (std::uint32_t pid : o.split_segments[t]) {
            if (std::find(seen_paths.begin(), seen_paths.end(), pid) != seen_paths.end()) {
                continue;
            }
            seen_paths.push_back(pid);
            for (std::uint32_t g = o.cover_base[pid]; g < o.cover_base[pid + 1]; ++g) {
                pivots.push_back(g);
            }
        }
    }
    if (pivots.empty()) return best;

    static thread_local std::vector<Weight> acc_u, acc_v;
    acc_u.assign(pivots.size(), kUnreachable);
    acc_v.assign(pivots.size(), kUnreachable);
    fold_candidates(o, cu, first_u, pivots, acc_u);
    fold_candidates(o, cv, first_v, pivots, acc_v);
    qs.portal_pairs_scanned += (cu.count + cv.count) * pivots.size();
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        if (acc_u[k] >= kUnreachable || acc_v[k] >= kUnreachable) continue;
        if (acc_u[k] + acc_v[k] < best) best = acc_u[k] + acc_v[k];
    }
    return best;
}

std::size_t level_words(const AdditiveOracle& o) {
    std::size_t ids = o.portal_nodes.size() + o.portal_path.size() + o.node_pos.size();
    std::size_t vals = 0;
    for (const auto& c : o.covers) {
        vals += c.table.size() + c.offsets.size();
        ids += c.portals.size() + c.anc_paths.size() + c.anc_base.size();
    }
    for (const auto& r : o.path_rows) vals += r.size();
    for (const auto& r : o.piece_rows) vals += r.size();
    for (const auto& g : o.piece_gids) ids += g.size();
    if (o.exact) vals += o.exact->space_words();
    return vals + (ids + 1) / 2;
}

void collect_stats(const AdditiveOracle& o, std::size_t level,
                   std::vector<nlohmann::ordered_json>& levels) {
    if (levels.size() <= level) {
        levels.push_back(nlohmann::ordered_json{{"level", level + 1},
                                                {"oracles", 0},
                                                {"exact_levels", 0},
                                                {"pieces", 0},
                                                {"on_demand_pieces", 0},
                                                {"portals", 0},
                                                {"stored_distances", 0},
                                                {"words", 0}});
    }
    nlohmann::ordered_json& row = levels[level];
    row["oracles"] = row["oracles"].get<std::size_t>() + 1;
    if (o.exact_only) row["exact_levels"] = row["exact_levels"].get<std::size_t>() + 1;
    std::size_t portals = 0;
    std::size_t stored = 0;
    for (const auto& c : o.covers) {
        portals += c.portals.size();
        stored += c.table.size();
    }
    for (const auto& r : o.path_rows) stored += r.size();
    for (const auto& r : o.piece_rows) stored += r.size();
    std::size_t on_demand = 0;
    for (std::size_t p = 0; p < o.sub_oracles.size(); ++p) {
        if (!o.sub_oracles[p]) ++on_demand;
    }
    row["pieces"] = row["pieces"].get<std::size_t>() + o.division.pieces.size();
    row["on_demand_pieces"] = row["on_demand_pieces"].get<std::size_t>() + on_demand;
    row["portals"] = row["portals"].get<std::size_t>() + portals;
    row["stored_distances"] = row["stored_distances"].get<std::size_t>() + stored;
    row["words"] = row["words"].get<std::size_t>() + level_words(o);
    for (const auto& sub : o.sub_oracles) {
        if (sub) collect_stats(*sub, level + 1, levels);
    }
}

}  // namespace

AdditiveOracle build_additive(const PlanarGraph& g, Weight delta, double diameter_factor,
                              double eps) {
    return build_additive(g, delta, diameter_factor, eps, AdditiveConfig{});
}

AdditiveOracle build_additive(const PlanarGraph& g, Weight delta, double diameter_factor,
                              double eps, const AdditiveConfig& cfg) {
    if (g.n() == 0) throw ParameterError("additive oracle: empty graph");
    if (!g.embedded()) throw ParameterError("additive oracle: graph must be embedded");
    if (!g.connected()) throw ParameterError("additive oracle: graph must be connected");
    if (!(eps > 0.0) || eps > 1.0 || !std::isfinite(eps)) {
        throw ParameterError("additive oracle: eps must lie in (0, 1]");
    }
    if (delta < 0) throw ParameterError("additive oracle: delta must be nonnegative");
    if (!(diameter_factor > 0.0) || !std::isfinite(diameter_factor)) {
        throw ParameterError("additive oracle: diameter factor must be positive");
    }
    if (cfg.validate_diameter) validate_diameter(g, delta, diameter_factor, cfg);
    return build_level(g, delta, diameter_factor, eps, cfg);
}

Weight query_additive(const AdditiveOracle& o, NodeId u, NodeId v) {
    AdditiveQueryStats qs;
    return query_additive(o, u, v, qs);
}

Weight query_additive(const AdditiveOracle& o, NodeId u, NodeId v, AdditiveQueryStats& qs) {
    const std::size_t n = o.level_graph().n();
    if (u >= n || v >= n) throw ParameterError("additive oracle: node out of range");
    return query_impl(o, u, v, qs);
}

Weight tiny_piece_query(const AdditiveOracle& o, const Piece& p, NodeId u, NodeId v) {
    if (o.exact_only) throw ParameterError("tiny piece query: oracle level has no pieces");
    if (p.piece_id >= o.division.pieces.size() ||
        o.division.pieces[p.piece_id].node_set != p.node_set) {
        throw ParameterError("tiny piece query: piece does not belong to this oracle");
    }
    if (o.sub_oracles[p.piece_id]) {
        throw ParameterError("tiny piece query: piece exceeds the exact-fallback size");
    }
    const std::vector<NodeId>& cl = o.closures[p.piece_id];
    if (!contains_node(cl, u) || !contains_node(cl, v)) {
        throw ParameterError("tiny piece query: node outside piece");
    }
    if (u == v) return 0;
    return on_demand_distance(o, p.piece_id, u, v);
}

std::size_t additive_space_words(const AdditiveOracle& o) {
    std::size_t words = level_words(o);
    for (const auto& sub : o.sub_oracles) {
        if (sub) words += additive_space_words(*sub);
    }
    return words;
}

nlohmann::ordered_json additive_stats(const AdditiveOracle& o) {
    std::vector<nlohmann::ordered_json> levels;
    collect_stats(o, 0, levels);
    nlohmann::ordered_json out;
    out["delta"] = o.delta;
    out["diameter_factor"] = o.diameter_factor;
    out["eps"] = o.eps;
    out["spacing"] = o.spacing;
    out["depth"] = o.depth;
    out["levels"] = levels;
    return out;
}

}  // namespace planar

#include "planar/label.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "planar/separator.hpp"
#include "planar/shortest_path.hpp"
#include "planar/triangulate.hpp"

namespace planar {

namespace {

constexpr std::uint32_t kMagic = 0x4C424C50;  // "PLBL"
constexpr std::uint32_t kVersion = 1;

std::uint64_t fnv_step(std::uint64_t h, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t hash_build(const PlanarGraph& g, double eps, const std::vector<NodeId>& targets,
                         bool full) {
    std::uint64_t h = 14695981039346656037ULL;
    h = fnv_step(h, g.n());
    h = fnv_step(h, g.m());
    for (EdgeId e = 0; e < g.m(); ++e) {
        h = fnv_step(h, g.edge(e).u);
        h = fnv_step(h, g.edge(e).v);
        h = fnv_step(h, static_cast<std::uint64_t>(g.edge(e).w));
    }
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(eps));
    std::memcpy(&bits, &eps, sizeof(bits));
    h = fnv_step(h, bits);
    if (full) {
        h = fnv_step(h, ~std::uint64_t{0});
    } else {
        h = fnv_step(h, targets.size());
        for (NodeId t : targets) h = fnv_step(h, t);
    }
    return h;
}

// drop a portal only if some kept portal already routes within (1+eps);
// the comparison is kept in integers so the bound is never rounded up
bool within_budget(Weight route, Weight direct, double eps) {
    Weight slack = static_cast<Weight>(
        std::floor(static_cast<long double>(eps) * static_cast<long double>(direct)));
    return route <= direct + slack;
}

struct PathRef {
    std::uint32_t path_id = 0;
    std::vector<NodeId> nodes;     // local ids, root first
    std::vector<NodeId> global;    // the same nodes in graph ids
    std::vector<Weight> offsets;   // exact distance from the path's root
};

struct Builder {
    const PlanarGraph& g;
    double eps;
    std::vector<char> wanted;  // global: node receives entries
    std::vector<std::vector<LabelEntry>> entries;  // global, per node
    std::uint32_t next_path = 0;

    // portal selection for one node against one path.  `along` holds the
    // node's exact distance to every path node.  Starts from the nearest
    // path point and walks outward both ways, keeping a portal whenever the
    // already-kept ones would overshoot the (1+eps) budget.
    void select_portals(NodeId owner_global, std::uint32_t level, const PathRef& path,
                        const std::vector<Weight>& along) {
        const std::size_t len = path.nodes.size();
        std::size_t proj = 0;
        for (std::size_t j = 1; j < len; ++j)
            if (along[j] < along[proj]) proj = j;

        std::vector<LabelEntry> picked;
        auto keep = [&](std::size_t j) {
            picked.push_back(LabelEntry{level, path.path_id, path.global[j], path.offsets[j],
                                        along[j]});
        };
        keep(proj);

        // right of the projection: best kept portal seen so far, as dist - offset
        Weight best = along[proj] - path.offsets[proj];
        for (std::size_t j = proj + 1; j < len; ++j) {
            if (!within_budget(best + path.offsets[j], along[j], eps)) {
                keep(j);
                best = std::min(best, along[j] - path.offsets[j]);
            }
        }
        // left of the projection: same walk with dist + offset
        best = along[proj] + path.offsets[proj];
        for (std::size_t j = proj; j-- > 0;) {
            if (!within_budget(best - path.offsets[j], along[j], eps)) {
                keep(j);
                best = std::min(best, along[j] + path.offsets[j]);
            }
        }

        std::sort(picked.begin(), picked.end(),
                  [](const LabelEntry& a, const LabelEntry& b) { return a.offset < b.offset; });
        auto& row = entries[owner_global];
        row.insert(row.end(), picked.begin(), picked.end());
    }

    void process(const std::vector<NodeId>& piece, std::uint32_t level) {
        const std::size_t k = piece.size();
        if (k <= 1) return;

        std::vector<NodeId> back;
        PlanarGraph h = g.induced(piece, &back);

        // separator paths: root paths of a shortest-path tree; for tiny
        // pieces the single root path already covers everything
        ShortestPathTree t;
        std::vector<NodeId> tips;
        if (k == 2) {
            t = sssp(h, 0);
            tips = {1};
        } else {
            PlanarGraph ht = triangulate(h);
            t = sssp(ht, 0);
            std::vector<double> w(ht.n(), 1.0);
            std::array<NodeId, 3> corners = fundamental_cycle_separator(ht, t, w);
            for (NodeId c : corners)
                if (std::find(tips.begin(), tips.end(), c) == tips.end()) tips.push_back(c);
        }

        std::vector<char> on_sep(k, 0);
        std::vector<PathRef> paths;
        for (NodeId tip : tips) {
            PathRef p;
            p.path_id = next_path++;
            for (NodeId x = tip; x != kInvalidNode; x = t.parent[x]) p.nodes.push_back(x);
            std::reverse(p.nodes.begin(), p.nodes.end());
            p.offsets.reserve(p.nodes.size());
            for (NodeId x : p.nodes) {
                p.global.push_back(back[x]);
                p.offsets.push_back(t.dist[x]);
                on_sep[x] = 1;
            }
            paths.push_back(std::move(p));
        }

        // exact distances between piece nodes and path nodes: one Dijkstra
        // per path node, or per wanted node when those are rarer
        std::vector<NodeId> want_local;
        for (NodeId v = 0; v < k; ++v)
            if (wanted[back[v]]) want_local.push_back(v);
        if (!want_local.empty()) {
            std::vector<NodeId> sep_nodes;
            for (NodeId v = 0; v < k; ++v)
                if (on_sep[v]) sep_nodes.push_back(v);

            if (want_local.size() <= sep_nodes.size()) {
                for (NodeId z : want_local) {
                    ShortestPathTree zt = sssp(h, z);
                    std::vector<Weight> along;
                    for (const PathRef& p : paths) {
                        along.clear();
                        for (NodeId q : p.nodes) along.push_back(zt.dist[q]);
                        select_portals(back[z], level, p, along);
                    }
                }
            } else {
                std::vector<std::vector<Weight>> from_sep(k);
                for (NodeId q : sep_nodes) from_sep[q] = sssp(h, q).dist;
                std::vector<Weight> along;
                for (NodeId z : want_local) {
                    for (const PathRef& p : paths) {
                        along.clear();
                        for (NodeId q : p.nodes) along.push_back(from_sep[q][z]);
                        select_portals(back[z], level, p, along);
                    }
                }
            }
        }

        // recurse into the components left after removing the paths
        std::vector<char> seen(k, 0);
        std::vector<NodeId> stack, comp;
        for (NodeId s = 0; s < k; ++s) {
            if (on_sep[s] || seen[s]) continue;
            comp.clear();
            stack.assign(1, s);
            seen[s] = 1;
            while (!stack.empty()) {
                NodeId u = stack.back();
                stack.pop_back();
                comp.push_back(back[u]);
                for (EdgeId e : h.incident(u)) {
                    NodeId v = h.other(e, u);
                    if (on_sep[v] || seen[v]) continue;
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
            std::sort(comp.begin(), comp.end());
            process(comp, level + 1);
        }
    }
};

std::vector<DistanceLabel> build_impl(const PlanarGraph& g, double eps,
                                      const std::vector<NodeId>& targets, bool full) {
    if (g.n() == 0) throw ParameterError("labels need a nonempty graph");
    if (!(eps > 0) || eps > 1.0) throw ParameterError("labels need eps in (0, 1]");
    if (!g.embedded()) throw ParameterError("labels need an embedded graph");
    if (!g.connected()) throw ParameterError("labels need a connected graph");

    Builder b{g, eps, std::vector<char>(g.n(), 0),
              std::vector<std::vector<LabelEntry>>(g.n()), 0};
    if (full) {
        std::fill(b.wanted.begin(), b.wanted.end(), 1);
    } else {
        for (NodeId t : targets) {
            if (t >= g.n()) throw ParameterError("label target out of range");
            b.wanted[t] = 1;
        }
    }

    std::vector<NodeId> all(g.n());
    for (NodeId v = 0; v < g.n(); ++v) all[v] = v;
    b.process(all, 0);

    std::uint64_t id = hash_build(g, eps, targets, full);
    std::vector<DistanceLabel> out(g.n());
    for (NodeId v = 0; v < g.n(); ++v) {
        out[v].owner = v;
        out[v].eps = eps;
        out[v].build_id = id;
        out[v].entries = std::move(b.entries[v]);
        assert(std::is_sorted(out[v].entries.begin(), out[v].entries.end(),
                              [](const LabelEntry& a, const LabelEntry& e) {
                                  return a.path_id < e.path_id ||
                                         (a.path_id == e.path_id && a.offset < e.offset);
                              }) &&
               "label entries out of order");
    }
    return out;
}

}  // namespace

std::vector<DistanceLabel> build_labels(const PlanarGraph& g, double eps) {
    return build_impl(g, eps, {}, true);
}

std::vector<DistanceLabel> build_labels(const PlanarGraph& g, double eps,
                                        const std::vector<NodeId>& targets) {
    return build_impl(g, eps, targets, false);
}

Weight decode(const DistanceLabel& a, const DistanceLabel& b) {
    if (a.build_id != b.build_id) throw ParameterError("labels come from different builds");
    if (a.owner == b.owner) return 0;

    Weight best = kUnreachable;
    std::size_t i = 0, j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        std::uint32_t pa = a.entries[i].path_id, pb = b.entries[j].path_id;
        if (pa < pb) {
            ++i;
            continue;
        }
        if (pb < pa) {
            ++j;
            continue;
        }
        // shared path: merge the two offset-sorted runs; each entry pairs
        // with the best lower-offset entry of the other side
        Weight best_a = kUnreachable, best_b = kUnreachable;  // dist - offset
        while (i < a.entries.size() && a.entries[i].path_id == pa &&
               j < b.entries.size() && b.entries[j].path_id == pa) {
            if (a.entries[i].offset <= b.entries[j].offset) {
                const LabelEntry& e = a.entries[i++];
                if (best_b < kUnreachable)
                    best = std::min(best, e.dist + e.offset + best_b);
                best_a = std::min(best_a, e.dist - e.offset);
            } else {
                const LabelEntry& e = b.entries[j++];
                if (best_a < kUnreachable)
                    best = std::min(best, e.dist + e.offset + best_a);
                best_b = std::min(best_b, e.dist - e.offset);
            }
        }
        while (i < a.entries.size() && a.entries[i].path_id == pa) {
            const LabelEntry& e = a.entries[i++];
            if (best_b < kUnreachable) best = std::min(best, e.dist + e.offset + best_b);
        }
        while (j < b.entries.size() && b.entries[j].path_id == pa) {
            const LabelEntry& e = b.entries[j++];
            if (best_a < kUnreachable) best = std::min(best, e.dist + e.offset + best_a);
        }
    }
    return best;
}

std::size_t max_label_entries(const std::vector<DistanceLabel>& labels) {
    std::size_t m = 0;
    for (const DistanceLabel& l : labels) m = std::max(m, l.entries.size());
    return m;
}

namespace {

template <class T>
void put(std::ostream& out, T x) {
    out.write(reinterpret_cast<const char*>(&x), sizeof(x));
}

template <class T>
T get(std::istream& in) {
    T x{};
    in.read(reinterpret_cast<char*>(&x), sizeof(x));
    if (!in) throw ParseError("label stream truncated");
    return x;
}

}  // namespace

void write_labels(std::ostream& out, const std::vector<DistanceLabel>& labels) {
    put(out, kMagic);
    put(out, kVersion);
    put(out, static_cast<std::uint64_t>(labels.size()));
    for (const DistanceLabel& l : labels) {
        put(out, l.owner);
        put(out, l.eps);
        put(out, l.build_id);
        put(out, static_cast<std::uint32_t>(l.entries.size()));
        for (const LabelEntry& e : l.entries) {
            put(out, e.level);
            put(out, e.path_id);
            put(out, e.portal);
            put(out, e.offset);
            put(out, e.dist);
        }
    }
}

std::vector<DistanceLabel> read_labels(std::istream& in) {
    if (get<std::uint32_t>(in) != kMagic) throw ParseError("not a label stream");
    if (get<std::uint32_t>(in) != kVersion) throw ParseError("unsupported label version");
    auto count = get<std::uint64_t>(in);
    std::vector<DistanceLabel> labels(count);
    for (DistanceLabel& l : labels) {
        l.owner = get<NodeId>(in);
        l.eps = get<double>(in);
        l.build_id = get<std::uint64_t>(in);
        auto entries = get<std::uint32_t>(in);
        l.entries.resize(entries);
        for (LabelEntry& e : l.entries) {
            e.level = get<std::uint32_t>(in);
            e.path_id = get<std::uint32_t>(in);
            e.portal = get<NodeId>(in);
            e.offset = get<Weight>(in);
            e.dist = get<Weight>(in);
        }
    }
    return labels;
}

}  // namespace planar

#include "planar/division.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include "planar/triangulate.hpp"
#include "planar/types.hpp"
#include "separator_internal.hpp"

namespace planar {
namespace {

struct WorkPiece {
    std::vector<NodeId> nodes;            // sorted interior
    std::vector<std::uint32_t> boundary;  // sorted path ids
    std::int32_t tree_pos = 0;
    bool alive = true;
};

// Incremental division state.  Separator segments only ever grow downward
// from already chosen root paths, so each new corner contributes at most
// one contiguous segment, and a segment always lies inside one piece.
struct Builder {
    const PlanarGraph& g;
    std::uint32_t bcap;
    std::uint32_t scap;

    ShortestPathTree t;
    PlanarGraph gt;
    detail::FaceStructure fs;
    bool machinery = false;

    std::vector<char> sv;                   // node is on a separator path
    std::vector<std::int32_t> node_chain;   // node -> path id, -1 inside pieces
    std::vector<std::int32_t> node_piece;   // node -> working piece id, -1 on paths
    std::vector<SeparatorPath> chains;
    std::vector<std::int32_t> chain_anchor;
    std::vector<WorkPiece> wps;
    std::vector<DivisionNode> tree;
    DivisionStats st{};

    std::vector<long double> wbuf;
    std::vector<std::int32_t> comp;  // component of gt minus the triple, -1 on it
    std::vector<char> mark;
    std::vector<NodeId> marked;
    std::vector<NodeId> queue;
    std::vector<std::uint32_t> last_fragments;  // fragments of the split piece

    Builder(const PlanarGraph& graph, std::uint32_t boundary_cap, std::uint32_t size_cap)
        : g(graph), bcap(boundary_cap), scap(size_cap) {}

    void ensure_machinery() {
        if (machinery) return;
        gt = triangulate(g);
        fs = detail::build_face_structure(gt, t);
        machinery = true;
    }

    int find_violator() const {
        for (std::size_t i = 0; i < wps.size(); ++i) {
            const WorkPiece& p = wps[i];
            if (!p.alive) continue;
            if (p.boundary.size() > bcap || p.nodes.size() > scap) return int(i);
        }
        return -1;
    }

    std::vector<std::uint32_t> fragment_boundary(const std::vector<NodeId>& nodes) const {
        std::vector<std::uint32_t> b;
        for (NodeId x : nodes)
            for (EdgeId e : g.incident(x)) {
                const NodeId y = g.other(e, x);
                if (sv[y]) b.push_back(std::uint32_t(node_chain[y]));
            }
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        return b;
    }

    void step(std::uint32_t pid, bool endpoint);
};

void Builder::step(std::uint32_t pid, bool endpoint) {
    const std::size_t n = g.n();
    ++st.steps;
    if (endpoint) {
        ++st.endpoint_steps;
    } else {
        ++st.uniform_steps;
    }
    last_fragments.clear();

    // ---- weights per the pseudocode's two cases ----

    wbuf.assign(n, 0.0L);
    if (endpoint) {
        for (std::uint32_t q : wps[pid].boundary) {
            wbuf[chains[q].nodes.front()] += 1.0L;
            wbuf[chains[q].nodes.back()] += 1.0L;
        }
    } else {
        for (NodeId v : wps[pid].nodes) wbuf[v] = 1.0L;
    }

    const std::array<NodeId, 3> corners = detail::centroid_face_corners(fs, wbuf);

    // nodes of T(u) + T(v) + T(w)
    marked.clear();
    for (NodeId c : corners) {
        for (NodeId x = c; x != kInvalidNode && !mark[x]; x = t.parent[x]) {
            mark[x] = 1;
            marked.push_back(x);
        }
    }

    // ---- balance audit on the triangulation minus the triple ----

    comp.assign(n, -2);
    long double total = 0.0L;
    for (std::size_t v = 0; v < n; ++v) total += wbuf[v];
    long double worst = 0.0L;
    std::int32_t ncomp = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (mark[s]) {
            comp[s] = -1;
            continue;
        }
        if (comp[s] != -2) continue;
        const std::int32_t c = ncomp++;
        long double w = 0.0L;
        queue.assign(1, s);
        comp[s] = c;
        while (!queue.empty()) {
            const NodeId x = queue.back();
            queue.pop_back();
            w += wbuf[x];
            for (EdgeId e : gt.incident(x)) {
                const NodeId y = gt.other(e, x);
                if (mark[y] || comp[y] != -2) continue;
                comp[y] = c;
                queue.push_back(y);
            }
        }
        if (w > worst) worst = w;
    }
    if (2.0L * worst > total) throw BuildError("separation step lost balance");
    if (total > 0.0L) {
        const double ratio = double(worst / total);
        if (ratio > st.max_balance_ratio) st.max_balance_ratio = ratio;
    }

    // ---- new separator segments, at most one per corner ----

    std::array<std::int32_t, 3> corner_chain{-1, -1, -1};
    std::vector<NodeId> fresh;
    for (int i = 0; i < 3; ++i) {
        const NodeId c = corners[i];
        if (sv[c]) continue;
        std::vector<NodeId> seg;
        for (NodeId x = c; x != kInvalidNode && !sv[x]; x = t.parent[x]) seg.push_back(x);
        std::reverse(seg.begin(), seg.end());
        const auto id = std::uint32_t(chains.size());
        SeparatorPath sp;
        sp.path_id = id;
        sp.length = t.dist[seg.back()] - t.dist[seg.front()];
        sp.nodes = std::move(seg);
        for (NodeId x : sp.nodes) {
            sv[x] = 1;
            node_chain[x] = std::int32_t(id);
            fresh.push_back(x);
        }
        chains.push_back(std::move(sp));
        chain_anchor.push_back(-1);
        corner_chain[i] = std::int32_t(id);
    }

    for (NodeId x : marked) mark[x] = 0;

    // every corner already on a path: a no-op step, the caller retries
    if (fresh.empty()) return;

    const auto nu = std::int32_t(tree.size());
    {
        DivisionNode sn;
        sn.parent = wps[pid].tree_pos;
        sn.depth = tree[wps[pid].tree_pos].depth + 1;
        sn.split = true;
        sn.corners = corners;
        sn.chain_ids = corner_chain;
        tree.push_back(sn);
    }

    // anchor each segment where it was cut out; segments that landed in a
    // remote piece stay at that piece's tree position
    std::vector<std::uint32_t> affected;
    for (int i = 0; i < 3; ++i) {
        if (corner_chain[i] < 0) continue;
        const auto id = std::uint32_t(corner_chain[i]);
        const auto owner = std::uint32_t(node_piece[chains[id].nodes.front()]);
        chain_anchor[id] = owner == pid ? nu : wps[owner].tree_pos;
        chains[id].tree_level = tree[chain_anchor[id]].depth;
        if (std::find(affected.begin(), affected.end(), owner) == affected.end())
            affected.push_back(owner);
    }
    std::sort(affected.begin(), affected.end());

    for (NodeId x : fresh) node_piece[x] = -1;

    // ---- refragment every piece that lost nodes ----

    std::map<std::int32_t, std::int32_t> region_of_comp;
    for (const std::uint32_t opid : affected) {
        std::vector<NodeId> old = std::move(wps[opid].nodes);
        wps[opid].alive = false;
        wps[opid].boundary.clear();
        for (const NodeId s : old) {
            if (node_piece[s] != std::int32_t(opid)) continue;
            const auto fid = std::uint32_t(wps.size());
            std::vector<NodeId> frag;
            queue.assign(1, s);
            node_piece[s] = std::int32_t(fid);
            while (!queue.empty()) {
                const NodeId x = queue.back();
                queue.pop_back();
                frag.push_back(x);
                for (EdgeId e : g.incident(x)) {
                    const NodeId y = g.other(e, x);
                    if (node_piece[y] != std::int32_t(opid)) continue;
                    node_piece[y] = std::int32_t(fid);
                    queue.push_back(y);
                }
            }
            std::sort(frag.begin(), frag.end());
            WorkPiece wp;
            wp.nodes = std::move(frag);
            wp.boundary = fragment_boundary(wp.nodes);
            if (opid == pid) {
                // group fragments by the component of the cut they fell in
                const std::int32_t key = comp[wp.nodes.front()];
                auto it = region_of_comp.find(key);
                if (it == region_of_comp.end()) {
                    const auto rn = std::int32_t(tree.size());
                    DivisionNode reg;
                    reg.parent = nu;
                    reg.depth = tree[nu].depth;
                    reg.split = false;
                    tree.push_back(reg);
                    it = region_of_comp.emplace(key, rn).first;
                }
                wp.tree_pos = it->second;
                last_fragments.push_back(fid);
            } else {
                wp.tree_pos = wps[opid].tree_pos;
            }
            wps.push_back(std::move(wp));
        }
    }
}

}  // namespace

Division build_division(const PlanarGraph& g, double eps, std::uint32_t boundary_cap,
                        std::uint32_t size_cap) {
    if (!(eps > 0.0) || eps > 1.0) throw ParameterError("eps must lie in (0, 1]");
    if (boundary_cap == 0) throw ParameterError("boundary cap must be positive");
    if (g.n() == 0) throw ParameterError("empty graph");
    if (!g.embedded()) throw ParameterError("graph is not embedded");
    if (!g.connected()) throw ParameterError("graph is not connected");

    const std::size_t n = g.n();
    std::uint32_t scap = size_cap;
    if (scap == 0) {
        scap = n >= 2 ? std::uint32_t(std::ceil(std::log2(double(n)) / (eps * eps))) : 1;
        if (scap < 8) scap = 8;
    }

    Builder b(g, boundary_cap, scap);
    b.t = sssp(g, 0);
    b.sv.assign(n, 0);
    b.node_chain.assign(n, -1);
    b.node_piece.assign(n, 0);
    b.mark.assign(n, 0);
    {
        WorkPiece all;
        all.nodes.resize(n);
        std::iota(all.nodes.begin(), all.nodes.end(), NodeId(0));
        b.wps.push_back(std::move(all));
        b.tree.push_back(DivisionNode{});
    }

    // graphs under three nodes cannot be separated; they stay one piece
    if (n >= 3) {
        for (;;) {
            const int vp = b.find_violator();
            if (vp < 0) break;
            const bool ep = b.wps[vp].boundary.size() > boundary_cap;
            b.ensure_machinery();
            b.step(std::uint32_t(vp), ep);
            if (b.wps[vp].alive) {
                // the cut missed the piece entirely; force progress with
                // uniform weights, which always hits it
                if (!ep) throw BuildError("separation made no progress");
                ++b.st.forced_uniform_retries;
                b.step(std::uint32_t(vp), false);
                if (b.wps[vp].alive) throw BuildError("separation made no progress");
            } else if (ep) {
                for (const std::uint32_t f : b.last_fragments)
                    if (b.wps[f].boundary.size() > boundary_cap)
                        throw BuildError("boundary paths not reduced below cap");
            }
        }
    }

    // ---- export ----

    Division d;
    d.graph = g;
    d.spt = std::move(b.t);
    d.paths = std::move(b.chains);
    d.path_anchor = std::move(b.chain_anchor);
    d.tree = std::move(b.tree);
    d.node_path = std::move(b.node_chain);
    d.eps = eps;
    d.boundary_cap = boundary_cap;
    d.size_cap = scap;
    d.node_to_piece.assign(n, -1);
    for (WorkPiece& wp : b.wps) {
        if (!wp.alive) continue;
        Piece p;
        p.piece_id = std::uint32_t(d.pieces.size());
        p.node_set = std::move(wp.nodes);
        p.boundary = std::move(wp.boundary);
        p.parent = wp.tree_pos;
        for (NodeId v : p.node_set) d.node_to_piece[v] = std::int32_t(p.piece_id);
        d.pieces.push_back(std::move(p));
    }

    std::size_t covered = 0;
    for (const Piece& p : d.pieces) covered += p.node_set.size();
    std::size_t separators = 0;
    for (std::size_t v = 0; v < n; ++v) separators += b.sv[v] ? 1 : 0;
    if (covered + separators != n) throw BuildError("division does not cover the graph");

    d.stats = b.st;
    for (const DivisionNode& tn : d.tree)
        if (tn.split && tn.depth > d.stats.max_depth) d.stats.max_depth = tn.depth;
    if (n >= 2) {
        const double lg = std::log2(double(n));
        d.stats.depth_constant = double(d.stats.max_depth) / lg;
        d.stats.piece_constant = double(d.pieces.size()) * lg / (double(n) * eps);
        if (double(d.stats.max_depth) > 8.0 * std::max(1.0, lg))
            throw BuildError("division tree too deep");
    }
    return d;
}

std::vector<SeparatorPath> separating_triple(const Division& div, const SeparatorPath& qa,
                                             const SeparatorPath& qb) {
    const auto check = [&](const SeparatorPath& q) {
        if (q.path_id >= div.paths.size() || div.paths[q.path_id].nodes != q.nodes)
            throw ParameterError("path does not belong to the division");
    };
    check(qa);
    check(qb);

    std::vector<std::int32_t> up;
    for (std::int32_t x = div.path_anchor[qa.path_id]; x != -1; x = div.tree[x].parent)
        up.push_back(x);
    std::int32_t lca = -1;
    for (std::int32_t x = div.path_anchor[qb.path_id]; x != -1; x = div.tree[x].parent) {
        if (std::find(up.begin(), up.end(), x) != up.end()) {
            lca = x;
            break;
        }
    }
    while (lca >= 0 && !div.tree[lca].split) lca = div.tree[lca].parent;
    if (lca < 0) throw BuildError("no split above the paths");

    const DivisionNode& sn = div.tree[lca];
    std::vector<SeparatorPath> out;
    for (int i = 0; i < 3; ++i) {
        SeparatorPath sp;
        sp.path_id = sn.chain_ids[i] >= 0 ? std::uint32_t(sn.chain_ids[i])
                                          : std::uint32_t(div.paths.size() + i);
        for (NodeId x = sn.corners[i]; x != kInvalidNode; x = div.spt.parent[x])
            sp.nodes.push_back(x);
        std::reverse(sp.nodes.begin(), sp.nodes.end());
        sp.length = div.spt.dist[sn.corners[i]];
        sp.tree_level = sn.depth;
        out.push_back(std::move(sp));
    }
    return out;
}

std::vector<NodeId> piece_closure(const Division& div, std::uint32_t piece_id) {
    if (piece_id >= div.pieces.size()) throw ParameterError("piece id out of range");
    std::vector<NodeId> out = div.pieces[piece_id].node_set;
    for (NodeId x : div.pieces[piece_id].node_set)
        for (EdgeId e : div.graph.incident(x)) {
            const NodeId y = div.graph.other(e, x);
            if (div.node_to_piece[y] < 0) out.push_back(y);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void write_division(const Division& div, std::ostream& os) {
    os << "division pieces=" << div.pieces.size() << " paths=" << div.paths.size() << "\n";
    for (const Piece& p : div.pieces) {
        os << "piece " << p.piece_id << " nodes";
        for (NodeId v : p.node_set) os << ' ' << v;
        os << " paths";
        for (std::uint32_t q : p.boundary) os << ' ' << q;
        os << "\n";
    }
    for (const SeparatorPath& q : div.paths) {
        os << "path " << q.path_id << " nodes";
        for (NodeId v : q.nodes) os << ' ' << v;
        os << "\n";
    }
}

}  // namespace planar

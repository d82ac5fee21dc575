#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "planar/division.hpp"
#include "planar/embed.hpp"
#include "planar/generate.hpp"
#include "planar/graph.hpp"
#include "planar/separator.hpp"
#include "planar/shortest_path.hpp"
#include "planar/triangulate.hpp"

using namespace planar;

namespace {

// union of the tree paths from the root to the given nodes
std::vector<char> root_path_union(const ShortestPathTree& t, const std::array<NodeId, 3>& tips,
                                  std::size_t n) {
    std::vector<char> cut(n, 0);
    for (NodeId c : tips)
        for (NodeId x = c; x != kInvalidNode && !cut[x]; x = t.parent[x]) cut[x] = 1;
    return cut;
}

// weights of the connected components of g minus the cut nodes
std::vector<double> component_weights(const PlanarGraph& g, const std::vector<char>& cut,
                                      const std::vector<double>& w) {
    std::vector<int> comp(g.n(), -1);
    std::vector<double> sums;
    for (NodeId s = 0; s < g.n(); ++s) {
        if (cut[s] || comp[s] >= 0) continue;
        const int c = int(sums.size());
        sums.push_back(0.0);
        std::vector<NodeId> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            const NodeId x = stack.back();
            stack.pop_back();
            sums[c] += w[x];
            for (EdgeId e : g.incident(x)) {
                const NodeId y = g.other(e, x);
                if (cut[y] || comp[y] >= 0) continue;
                comp[y] = c;
                stack.push_back(y);
            }
        }
    }
    return sums;
}

// center 0 joined to a rim path 1..rim; triangulated fan
PlanarGraph make_fan(std::size_t rim) {
    PlanarGraph f(rim + 1);
    for (NodeId i = 1; i <= rim; ++i) f.add_edge(0, i, 1);
    for (NodeId i = 1; i < rim; ++i) f.add_edge(i, i + 1, 1);
    embed(f);
    return f;
}

// every structural invariant a finished division has to satisfy
void audit_division(const Division& d) {
    const PlanarGraph& g = d.graph;
    const std::size_t n = g.n();

    std::vector<int> owner(n, -1);
    std::size_t covered = 0;
    for (const Piece& p : d.pieces) {
        CHECK(std::is_sorted(p.node_set.begin(), p.node_set.end()));
        CHECK(p.boundary.size() <= d.boundary_cap);
        CHECK(p.node_set.size() <= d.size_cap);
        CHECK(p.parent >= 0);
        CHECK(p.parent < std::int32_t(d.tree.size()));
        for (NodeId v : p.node_set) {
            REQUIRE(v < n);
            CHECK(owner[v] == -1);
            owner[v] = int(p.piece_id);
        }
        for (std::uint32_t q : p.boundary) CHECK(q < d.paths.size());
        covered += p.node_set.size();
    }

    REQUIRE(d.path_anchor.size() == d.paths.size());
    std::vector<int> path_of(n, -1);
    std::size_t on_paths = 0;
    for (const SeparatorPath& q : d.paths) {
        REQUIRE(!q.nodes.empty());
        for (NodeId v : q.nodes) {
            REQUIRE(v < n);
            CHECK(path_of[v] == -1);
            path_of[v] = int(q.path_id);
        }
        on_paths += q.nodes.size();
        Weight along = 0;
        for (std::size_t i = 1; i < q.nodes.size(); ++i) {
            // a contiguous root-path segment: parent links, real edges,
            // and root distance strictly increasing
            CHECK(d.spt.parent[q.nodes[i]] == q.nodes[i - 1]);
            const EdgeId e = g.find_edge(q.nodes[i - 1], q.nodes[i]);
            REQUIRE(e != kInvalidEdge);
            along += g.edge(e).w;
            CHECK(d.spt.dist[q.nodes[i]] > d.spt.dist[q.nodes[i - 1]]);
        }
        CHECK(q.length == along);
        const std::int32_t anchor = d.path_anchor[q.path_id];
        REQUIRE(anchor >= 0);
        REQUIRE(anchor < std::int32_t(d.tree.size()));
        CHECK(q.tree_level == d.tree[anchor].depth);
    }
    CHECK(covered + on_paths == n);

    for (std::size_t v = 0; v < n; ++v) {
        CHECK(d.node_to_piece[v] == owner[v]);
        CHECK(d.node_path[v] == path_of[v]);
    }

    // boundary lists are exactly the paths adjacent to the interior
    for (const Piece& p : d.pieces) {
        std::set<std::uint32_t> adj;
        for (NodeId v : p.node_set)
            for (EdgeId e : g.incident(v)) {
                const NodeId y = g.other(e, v);
                if (path_of[y] >= 0) adj.insert(std::uint32_t(path_of[y]));
            }
        CHECK(std::vector<std::uint32_t>(adj.begin(), adj.end()) == p.boundary);
    }

    REQUIRE(!d.tree.empty());
    CHECK(d.tree[0].parent == -1);
    for (std::size_t i = 1; i < d.tree.size(); ++i) {
        CHECK(d.tree[i].parent >= 0);
        CHECK(d.tree[i].parent < std::int32_t(i));
    }

    CHECK(d.stats.max_balance_ratio <= 0.5);
    CHECK(d.stats.endpoint_steps + d.stats.uniform_steps == d.stats.steps);
    if (n >= 2) CHECK(double(d.stats.max_depth) <= 8.0 * std::max(1.0, std::log2(double(n))));
}

// lowest common ancestor of two tree positions, lifted to a split node
std::int32_t lca_split(const Division& d, std::int32_t a, std::int32_t b) {
    std::vector<std::int32_t> up;
    for (std::int32_t x = a; x != -1; x = d.tree[x].parent) up.push_back(x);
    std::int32_t lca = -1;
    for (std::int32_t x = b; x != -1; x = d.tree[x].parent)
        if (std::find(up.begin(), up.end(), x) != up.end()) {
            lca = x;
            break;
        }
    while (lca >= 0 && !d.tree[lca].split) lca = d.tree[lca].parent;
    return lca;
}

// child of ancestor `anc` on the way up from `pos`, or -1 if pos == anc
std::int32_t child_towards(const Division& d, std::int32_t pos, std::int32_t anc) {
    std::int32_t prev = -1;
    for (std::int32_t x = pos; x != -1; x = d.tree[x].parent) {
        if (x == anc) return prev;
        prev = x;
    }
    return -2;  // anc not an ancestor at all
}

}  // namespace

// ---- fundamental cycle separator ----

TEST_CASE("triangle separator returns the whole triangle") {
    PlanarGraph g(3);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(2, 0, 1);
    embed(g);
    const ShortestPathTree t = sssp(g, 0);
    const std::vector<double> w{1.0, 1.0, 1.0};
    const auto triple = fundamental_cycle_separator(g, t, w);

    std::set<NodeId> got(triple.begin(), triple.end());
    CHECK(got == std::set<NodeId>{0, 1, 2});
    const auto cut = root_path_union(t, triple, 3);
    CHECK(component_weights(g, cut, w).empty());
}

TEST_CASE("fan separator balances leaf weight") {
    const PlanarGraph f = triangulate(make_fan(9));
    const ShortestPathTree t = sssp(f, 0);
    std::vector<double> w(f.n(), 0.0);
    for (NodeId i = 1; i < f.n(); ++i) w[i] = 1.0;
    const auto triple = fundamental_cycle_separator(f, t, w);
    const auto cut = root_path_union(t, triple, f.n());
    double total = 9.0;
    for (double s : component_weights(f, cut, w)) CHECK(2.0 * s <= total);
}

TEST_CASE("7x7 grid separator leaves components of at most 24 nodes") {
    const PlanarGraph g = triangulate(make_grid(7, 7));
    const ShortestPathTree t = sssp(g, 0);
    const std::vector<double> w(g.n(), 1.0);
    const auto triple = fundamental_cycle_separator(g, t, w);
    const auto cut = root_path_union(t, triple, g.n());
    const auto sums = component_weights(g, cut, w);
    CHECK(!sums.empty());
    for (double s : sums) CHECK(s <= 24.0);
}

TEST_CASE("separator is deterministic") {
    const PlanarGraph g = triangulate(make_weighted_grid(6, 8, 20, 11));
    const ShortestPathTree t = sssp(g, 0);
    std::vector<double> w(g.n(), 1.0);
    CHECK(fundamental_cycle_separator(g, t, w) == fundamental_cycle_separator(g, t, w));
}

TEST_CASE("separator rejects bad inputs") {
    PlanarGraph grid = make_grid(4, 4);  // embedded but not triangulated
    const ShortestPathTree t = sssp(grid, 0);
    const std::vector<double> unit(grid.n(), 1.0);
    CHECK_THROWS_AS(fundamental_cycle_separator(grid, t, unit), ParameterError);

    const PlanarGraph g = triangulate(grid);
    const ShortestPathTree tg = sssp(g, 0);
    CHECK_THROWS_AS(fundamental_cycle_separator(g, tg, std::vector<double>(g.n(), 0.0)),
                    ParameterError);
    CHECK_THROWS_AS(fundamental_cycle_separator(g, tg, std::vector<double>(g.n(), 1.5)),
                    ParameterError);
    CHECK_THROWS_AS(fundamental_cycle_separator(g, tg, std::vector<double>(3, 1.0)),
                    ParameterError);

    PlanarGraph path(2);
    path.add_edge(0, 1, 1);
    embed(path);
    CHECK_THROWS_AS(fundamental_cycle_separator(path, sssp(path, 0), {1.0, 1.0}),
                    ParameterError);
}

// ---- division construction ----

TEST_CASE("five node path stays a single piece") {
    PlanarGraph g(5);
    for (NodeId i = 0; i + 1 < 5; ++i) g.add_edge(i, i + 1, 1);
    embed(g);
    const Division d = build_division(g, 1.0);
    CHECK(d.pieces.size() == 1);
    CHECK(d.paths.empty());
    CHECK(d.pieces[0].node_set.size() == 5);
    CHECK(d.pieces[0].boundary.empty());
    audit_division(d);
}

TEST_CASE("20x20 grid division meets both caps") {
    const PlanarGraph g = make_grid(20, 20);
    const Division d = build_division(g, 0.5);
    const auto cap = std::uint32_t(std::ceil(4.0 * std::log2(400.0)));
    CHECK(d.size_cap == cap);
    CHECK(d.pieces.size() > 1);
    for (const Piece& p : d.pieces) {
        CHECK(p.boundary.size() <= 10);
        CHECK(p.node_set.size() <= cap);
    }
    audit_division(d);
}

TEST_CASE("division invariants hold across instance families") {
    audit_division(build_division(make_grid(7, 7), 0.5));
    audit_division(build_division(make_grid(15, 3), 0.25));
    audit_division(build_division(make_weighted_grid(10, 12, 30, 7), 0.3));
    audit_division(build_division(make_deleted_grid(9, 9, 0.15, 3), 0.4));
    audit_division(build_division(make_weighted_grid(14, 14, 9, 21), 1.0));
}

TEST_CASE("division respects explicit caps") {
    const Division d = build_division(make_grid(9, 9), 0.5, 4, 12);
    CHECK(d.size_cap == 12);
    CHECK(d.boundary_cap == 4);
    for (const Piece& p : d.pieces) {
        CHECK(p.boundary.size() <= 4);
        CHECK(p.node_set.size() <= 12);
    }
    audit_division(d);
}

TEST_CASE("division is deterministic") {
    std::ostringstream a, b;
    write_division(build_division(make_weighted_grid(11, 9, 25, 5), 0.4), a);
    write_division(build_division(make_weighted_grid(11, 9, 25, 5), 0.4), b);
    CHECK(a.str() == b.str());
}

TEST_CASE("division rejects bad inputs") {
    const PlanarGraph g = make_grid(4, 4);
    CHECK_THROWS_AS(build_division(g, 0.0), ParameterError);
    CHECK_THROWS_AS(build_division(g, 1.5), ParameterError);
    CHECK_THROWS_AS(build_division(g, -0.3), ParameterError);

    PlanarGraph unembedded(4);
    unembedded.add_edge(0, 1, 1);
    unembedded.add_edge(1, 2, 1);
    unembedded.add_edge(2, 3, 1);
    CHECK_THROWS_AS(build_division(unembedded, 0.5), ParameterError);

    PlanarGraph split(4);
    split.add_edge(0, 1, 1);
    split.add_edge(2, 3, 1);
    embed(split);
    CHECK_THROWS_AS(build_division(split, 0.5), ParameterError);
}

// ---- separating triples ----

TEST_CASE("paths of the first split map back to its triple") {
    const Division d = build_division(make_grid(12, 12), 0.5);
    REQUIRE(d.tree.size() > 1);
    REQUIRE(d.tree[1].split);
    std::vector<std::uint32_t> root_chains;
    for (std::int32_t c : d.tree[1].chain_ids)
        if (c >= 0) root_chains.push_back(std::uint32_t(c));
    REQUIRE(root_chains.size() >= 2);

    const auto triple =
        separating_triple(d, d.paths[root_chains[0]], d.paths[root_chains[1]]);
    REQUIRE(triple.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(triple[i].nodes.back() == d.tree[1].corners[i]);
        CHECK(triple[i].nodes.front() == d.spt.root);
        CHECK(triple[i].tree_level == d.tree[1].depth);
        for (std::size_t k = 1; k < triple[i].nodes.size(); ++k)
            CHECK(d.spt.parent[triple[i].nodes[k]] == triple[i].nodes[k - 1]);
        CHECK(triple[i].length == d.spt.dist[triple[i].nodes.back()]);
    }

    // a path paired with itself yields the triple that created it
    const auto self_triple =
        separating_triple(d, d.paths[root_chains[0]], d.paths[root_chains[0]]);
    CHECK(self_triple.size() == 3);
    CHECK(self_triple[0].nodes.back() == d.tree[1].corners[0]);
}

TEST_CASE("separating triple disconnects pieces on opposite sides") {
    const Division d = build_division(make_grid(14, 14), 0.5);
    const PlanarGraph& g = d.graph;
    std::size_t tested = 0;
    for (std::size_t a = 0; a < d.pieces.size(); ++a) {
        for (std::size_t b = a + 1; b < d.pieces.size(); ++b) {
            const Piece& pa = d.pieces[a];
            const Piece& pb = d.pieces[b];
            if (pa.boundary.empty() || pb.boundary.empty()) continue;
            const SeparatorPath& qa = d.paths[pa.boundary.front()];
            const SeparatorPath& qb = d.paths[pb.boundary.front()];
            const auto triple = separating_triple(d, qa, qb);
            REQUIRE(triple.size() == 3);

            const std::int32_t split = lca_split(
                d, d.path_anchor[qa.path_id], d.path_anchor[qb.path_id]);
            REQUIRE(split >= 0);
            for (int i = 0; i < 3; ++i)
                CHECK(triple[i].nodes.back() == d.tree[split].corners[i]);

            // only pairs whose pieces sit in different regions of that cut
            // are promised to separate
            const std::int32_t ca = child_towards(d, pa.parent, split);
            const std::int32_t cb = child_towards(d, pb.parent, split);
            if (ca < 0 || cb < 0 || ca == cb) continue;
            ++tested;

            std::vector<char> cut(g.n(), 0);
            for (const SeparatorPath& q : triple)
                for (NodeId v : q.nodes) cut[v] = 1;
            std::vector<char> seen(g.n(), 0);
            std::vector<NodeId> stack;
            for (NodeId s : pa.node_set)
                if (!cut[s] && !seen[s]) {
                    seen[s] = 1;
                    stack.push_back(s);
                }
            while (!stack.empty()) {
                const NodeId x = stack.back();
                stack.pop_back();
                for (EdgeId e : g.incident(x)) {
                    const NodeId y = g.other(e, x);
                    if (cut[y] || seen[y]) continue;
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
            for (NodeId v : pb.node_set) CHECK(!seen[v]);
        }
    }
    CHECK(tested > 0);
}

TEST_CASE("separating triple rejects foreign paths") {
    const Division d = build_division(make_grid(10, 10), 0.5);
    REQUIRE(!d.paths.empty());
    SeparatorPath fake;
    fake.path_id = 0;
    fake.nodes = {0, 1};
    if (d.paths[0].nodes == fake.nodes) fake.nodes = {0, 1, 2};
    CHECK_THROWS_AS(separating_triple(d, fake, d.paths[0]), ParameterError);
    SeparatorPath out_of_range;
    out_of_range.path_id = std::uint32_t(d.paths.size());
    CHECK_THROWS_AS(separating_triple(d, d.paths[0], out_of_range), ParameterError);
}

// ---- closures and the dump format ----

TEST_CASE("piece closure adds exactly the adjacent separator nodes") {
    const Division d = build_division(make_grid(11, 11), 0.5);
    REQUIRE(!d.pieces.empty());
    for (const Piece& p : d.pieces) {
        const auto closure = piece_closure(d, p.piece_id);
        CHECK(std::includes(closure.begin(), closure.end(), p.node_set.begin(),
                            p.node_set.end()));
        for (NodeId v : closure) {
            if (std::binary_search(p.node_set.begin(), p.node_set.end(), v)) continue;
            CHECK(d.node_path[v] >= 0);
            bool touches = false;
            for (EdgeId e : d.graph.incident(v))
                if (d.node_to_piece[d.graph.other(e, v)] == std::int32_t(p.piece_id))
                    touches = true;
            CHECK(touches);
        }
    }
    CHECK_THROWS_AS(piece_closure(d, std::uint32_t(d.pieces.size())), ParameterError);
}

TEST_CASE("division dump lists every piece and path") {
    const Division d = build_division(make_weighted_grid(8, 8, 12, 2), 0.5);
    std::ostringstream os;
    write_division(d, os);
    std::istringstream is(os.str());

    std::string line;
    REQUIRE(std::getline(is, line));
    std::ostringstream head;
    head << "division pieces=" << d.pieces.size() << " paths=" << d.paths.size();
    CHECK(line == head.str());

    std::size_t piece_lines = 0, path_lines = 0;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "piece") {
            std::size_t id;
            std::string tok;
            ls >> id >> tok;
            REQUIRE(id < d.pieces.size());
            REQUIRE(tok == "nodes");
            std::vector<NodeId> nodes;
            while (ls >> tok && tok != "paths") nodes.push_back(NodeId(std::stoul(tok)));
            std::vector<std::uint32_t> paths;
            std::uint32_t q;
            while (ls >> q) paths.push_back(q);
            CHECK(nodes == d.pieces[id].node_set);
            CHECK(paths == d.pieces[id].boundary);
            ++piece_lines;
        } else {
            REQUIRE(kind == "path");
            std::size_t id;
            std::string tok;
            ls >> id >> tok;
            REQUIRE(id < d.paths.size());
            REQUIRE(tok == "nodes");
            std::vector<NodeId> nodes;
            NodeId v;
            while (ls >> v) nodes.push_back(v);
            CHECK(nodes == d.paths[id].nodes);
            ++path_lines;
        }
    }
    CHECK(piece_lines == d.pieces.size());
    CHECK(path_lines == d.paths.size());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "planar/dimacs.hpp"
#include "planar/exact_oracle.hpp"
#include "planar/embed.hpp"
#include "planar/generate.hpp"
#include "planar/graph.hpp"
#include "planar/shortest_path.hpp"
#include "planar/triangulate.hpp"

using namespace planar;

namespace {

// independent O(n^2) single-source distances, used to cross-check the
// library implementation
std::vector<Weight> naive_dist(const PlanarGraph& g, NodeId s) {
    std::vector<Weight> dist(g.n(), kUnreachable);
    std::vector<bool> done(g.n(), false);
    dist[s] = 0;
    for (std::size_t it = 0; it < g.n(); ++it) {
        NodeId best = kInvalidNode;
        for (NodeId u = 0; u < g.n(); ++u)
            if (!done[u] && dist[u] < kUnreachable &&
                (best == kInvalidNode || dist[u] < dist[best]))
                best = u;
        if (best == kInvalidNode) break;
        done[best] = true;
        for (EdgeId e : g.incident(best)) {
            NodeId v = g.other(e, best);
            dist[v] = std::min(dist[v], dist[best] + g.edge(e).w);
        }
    }
    return dist;
}

}  // namespace

TEST_CASE("graph rejects malformed edges") {
    PlanarGraph g(3);
    g.add_edge(0, 1, 1);
    CHECK_THROWS_AS(g.add_edge(0, 0, 1), ValidationError);   // self loop
    CHECK_THROWS_AS(g.add_edge(1, 0, 2), ValidationError);   // parallel
    CHECK_THROWS_AS(g.add_edge(0, 7, 1), ValidationError);   // out of range
    CHECK_THROWS_AS(g.add_edge(0, 2, -3), ValidationError);  // negative weight
    CHECK(g.m() == 1);
}

TEST_CASE("triangle embedding satisfies face formula") {
    PlanarGraph g(3);
    EdgeId ab = g.add_edge(0, 1, 1);
    EdgeId bc = g.add_edge(1, 2, 1);
    EdgeId ca = g.add_edge(2, 0, 1);
    CHECK(!g.embedded());
    g.set_rotations({{ab, ca}, {ab, bc}, {bc, ca}});
    CHECK(g.embedded());
    CHECK(g.face_count() == 2);  // inside plus outside
}

TEST_CASE("bad rotation system is rejected") {
    // two triangles sharing no nodes, rotations swapped between nodes
    PlanarGraph g(3);
    EdgeId ab = g.add_edge(0, 1, 1);
    EdgeId bc = g.add_edge(1, 2, 1);
    EdgeId ca = g.add_edge(2, 0, 1);
    CHECK_THROWS_AS(g.set_rotations({{ab}, {ab, bc}, {bc, ca}}), ValidationError);
    CHECK_THROWS_AS(g.set_rotations({{ab, ab}, {ab, bc}, {bc, ca}}), ValidationError);
    CHECK_THROWS_AS(g.set_rotations({{ab, bc}, {ab, bc}, {bc, ca}}), ValidationError);
}

TEST_CASE("grid generator: sizes and embedding") {
    PlanarGraph g12 = make_grid(1, 2);
    CHECK(g12.n() == 2);
    CHECK(g12.m() == 1);
    CHECK(g12.edge(0).w == 1);

    PlanarGraph g33 = make_grid(3, 3);
    CHECK(g33.n() == 9);
    CHECK(g33.m() == 12);
    CHECK(g33.embedded());
    CHECK(g33.connected());

    // Euler: f = 2 - n + m on a connected embedded graph
    PlanarGraph g10 = make_grid(10, 10);
    CHECK(g10.n() == 100);
    CHECK(g10.m() == 180);
    CHECK(g10.face_count() == 82);
}

TEST_CASE("weighted grid generator: bounds, planarity, determinism") {
    PlanarGraph a = make_weighted_grid(5, 5, 10, 1);
    CHECK(a.n() == 25);
    CHECK(a.m() == 40);
    CHECK(a.embedded());
    CHECK(a.connected());
    for (const Edge& e : a.edges()) {
        CHECK(e.w >= 1);
        CHECK(e.w <= 10);
    }
    PlanarGraph b = make_weighted_grid(5, 5, 10, 1);
    for (EdgeId e = 0; e < a.m(); ++e) CHECK(a.edge(e).w == b.edge(e).w);
    PlanarGraph c = make_weighted_grid(5, 5, 10, 2);
    bool any_diff = false;
    for (EdgeId e = 0; e < a.m(); ++e) any_diff |= a.edge(e).w != c.edge(e).w;
    CHECK(any_diff);
}

TEST_CASE("deleted grid generator stays connected and embedded") {
    PlanarGraph g = make_deleted_grid(8, 8, 0.2, 7);
    std::size_t full_m = 2 * 8 * 7;
    CHECK(g.n() == 64);
    CHECK(g.m() == full_m - std::size_t(std::llround(0.2 * double(full_m))));
    CHECK(g.connected());
    CHECK(g.embedded());
    CHECK_THROWS_AS(make_deleted_grid(3, 3, 0.9, 1), ParameterError);
    CHECK_THROWS_AS(make_deleted_grid(3, 3, 1.0, 1), ParameterError);
}

TEST_CASE("generator descriptions") {
    CHECK(generate_from_description("grid:3x4").n() == 12);
    CHECK(generate_from_description("wgrid:3x4:9:5").m() == 17);
    CHECK(generate_from_description("delgrid:6x6:0.1:3").connected());
    CHECK_THROWS_AS(generate_from_description("grid:3"), ParseError);
    CHECK_THROWS_AS(generate_from_description("blob:3x3"), ParseError);
    CHECK_THROWS_AS(generate_from_description("wgrid:3x3:9"), ParseError);
}

TEST_CASE("dimacs parser: minimal graphs") {
    PlanarGraph g = parse_dimacs("p sp 2 2\na 1 2 5\na 2 1 5\n");
    CHECK(g.n() == 2);
    CHECK(g.m() == 1);
    CHECK(g.edge(0).w == 5);

    CHECK_THROWS_AS(parse_dimacs("p sp 3 2\na 1 2 1\na 1 2 2\n"), ValidationError);

    // 4-cycle listed once per edge
    PlanarGraph cyc = parse_dimacs(
        "c four cycle\np sp 4 4\na 1 2 3\na 2 3 4\na 3 4 5\na 4 1 6\n");
    CHECK(cyc.n() == 4);
    CHECK(cyc.m() == 4);
    Weight total = 0;
    for (const Edge& e : cyc.edges()) total += e.w;
    CHECK(total == 3 + 4 + 5 + 6);
}

TEST_CASE("dimacs parser: malformed input") {
    CHECK_THROWS_AS(parse_dimacs("a 1 2 3\n"), ParseError);            // arc first
    CHECK_THROWS_AS(parse_dimacs("p sp 2 1\nx 1 2 3\n"), ParseError);  // bad type
    CHECK_THROWS_AS(parse_dimacs("p sp 2 1\na 1 2\n"), ParseError);    // short arc
    CHECK_THROWS_AS(parse_dimacs("p sp 2 2\na 1 2 3\n"), ParseError);  // count off
    CHECK_THROWS_AS(parse_dimacs("p tp 2 0\n"), ParseError);           // bad magic
    CHECK_THROWS_AS(parse_dimacs(""), ParseError);                     // empty
    CHECK_THROWS_AS(parse_dimacs("p sp 2 1\na 1 3 1\n"), ValidationError);  // range
    CHECK_THROWS_AS(parse_dimacs("p sp 2 1\na 1 1 1\n"), ValidationError);  // loop
    CHECK_THROWS_AS(parse_dimacs("p sp 0 0\n"), ValidationError);           // n = 0
}

TEST_CASE("dimacs round trip is the identity") {
    PlanarGraph g = make_weighted_grid(4, 6, 50, 11);
    PlanarGraph back = parse_dimacs(serialize_dimacs(g));
    REQUIRE(back.n() == g.n());
    REQUIRE(back.m() == g.m());
    for (EdgeId e = 0; e < g.m(); ++e) {
        CHECK(back.edge(e).u == g.edge(e).u);
        CHECK(back.edge(e).v == g.edge(e).v);
        CHECK(back.edge(e).w == g.edge(e).w);
    }
    CHECK(normalized(back));
}

TEST_CASE("embedding sidecar round trip") {
    PlanarGraph g = make_grid(4, 5);
    std::string gr = serialize_dimacs(g);
    std::string emb = serialize_embedding(g);

    PlanarGraph fresh = parse_dimacs(gr);
    CHECK(!fresh.embedded());
    apply_embedding(fresh, parse_embedding(emb));
    CHECK(fresh.embedded());
    CHECK(fresh.face_count() == g.face_count());

    // a corrupted sidecar (edge to a non neighbor) is rejected
    auto rows = parse_embedding(emb);
    rows[0][0] = 19;
    PlanarGraph fresh2 = parse_dimacs(gr);
    CHECK_THROWS_AS(apply_embedding(fresh2, rows), ValidationError);
}

TEST_CASE("sssp: tiny cases") {
    PlanarGraph path(3);
    path.add_edge(0, 1, 2);
    path.add_edge(1, 2, 3);
    ShortestPathTree t = sssp(path, 0);
    CHECK(t.dist[2] == 5);
    CHECK(t.parent[2] == 1);
    CHECK(t.parent_edge[2] == 1);

    PlanarGraph single(1);
    ShortestPathTree s = sssp(single, 0);
    CHECK(s.dist[0] == 0);
    CHECK(s.parent[0] == kInvalidNode);
}

TEST_CASE("sssp on 5x5 grid: corner to corner") {
    PlanarGraph g = make_grid(5, 5);
    ShortestPathTree t = sssp(g, 0);
    CHECK(t.dist[24] == 8);
    auto nd = naive_dist(g, 0);
    for (NodeId v = 0; v < g.n(); ++v) CHECK(t.dist[v] == nd[v]);
}

TEST_CASE("sssp matches naive search and relaxes every edge") {
    PlanarGraph g = make_weighted_grid(9, 7, 30, 3);
    for (NodeId s : {NodeId(0), NodeId(17), NodeId(62)}) {
        ShortestPathTree t = sssp(g, s);
        auto nd = naive_dist(g, s);
        for (NodeId v = 0; v < g.n(); ++v) CHECK(t.dist[v] == nd[v]);
        for (const Edge& e : g.edges()) {
            CHECK(t.dist[e.u] + e.w >= t.dist[e.v]);
            CHECK(t.dist[e.v] + e.w >= t.dist[e.u]);
        }
        // tree edges are tight
        for (NodeId v = 0; v < g.n(); ++v) {
            if (v == s) continue;
            REQUIRE(t.parent[v] != kInvalidNode);
            CHECK(t.dist[v] == t.dist[t.parent[v]] + g.edge(t.parent_edge[v]).w);
        }
    }
}

TEST_CASE("sssp marks unreachable nodes") {
    PlanarGraph g(4);
    g.add_edge(0, 1, 1);
    g.add_edge(2, 3, 1);
    ShortestPathTree t = sssp(g, 0);
    CHECK(t.dist[1] == 1);
    CHECK(t.dist[2] == kUnreachable);
    CHECK(!t.reachable(3));
}

TEST_CASE("nearest_sources matches per-source sweeps") {
    PlanarGraph g = make_weighted_grid(8, 8, 12, 5);
    std::vector<NodeId> srcs = {3, 17, 40, 63};
    MultiSourceResult ms = nearest_sources(g, srcs);
    std::vector<std::vector<Weight>> rows;
    for (NodeId s : srcs) rows.push_back(naive_dist(g, s));
    for (NodeId v = 0; v < g.n(); ++v) {
        Weight best = kUnreachable;
        NodeId who = kInvalidNode;
        for (std::size_t i = 0; i < srcs.size(); ++i) {
            if (rows[i][v] < best || (rows[i][v] == best && srcs[i] < who)) {
                best = rows[i][v];
                who = srcs[i];
            }
        }
        CHECK(ms.dist[v] == best);
        CHECK(ms.nearest[v] == who);
    }
}

TEST_CASE("diameter bounds sandwich the true diameter") {
    PlanarGraph g = make_weighted_grid(7, 9, 20, 9);
    DiameterBounds b = diameter_bounds(g);
    Weight diam = 0;
    for (NodeId u = 0; u < g.n(); ++u) {
        auto nd = naive_dist(g, u);
        for (NodeId v = 0; v < g.n(); ++v)
            if (nd[v] < kUnreachable) diam = std::max(diam, nd[v]);
    }
    CHECK(b.lb <= diam);
    CHECK(diam <= b.ub);
}

TEST_CASE("exact oracle basics") {
    PlanarGraph g(2);
    g.add_edge(0, 1, 7);
    ExactOracle o(g);
    CHECK(o.distance(0, 0) == 0);
    CHECK(o.distance(0, 1) == 7);
    CHECK(o.distance(1, 0) == 7);
    CHECK_THROWS_AS(o.distance(0, 5), ParameterError);
}

TEST_CASE("exact oracle matches sssp everywhere") {
    PlanarGraph g = make_weighted_grid(6, 6, 15, 21);
    ExactOracle o(g, 2);  // tiny cache, forces eviction
    for (NodeId u = 0; u < g.n(); ++u) {
        ShortestPathTree t = sssp(g, u);
        for (NodeId v = 0; v < g.n(); ++v) CHECK(o.distance(u, v) == t.dist[v]);
    }
    CHECK(o.stats()["cached_sources"] == 2);
}

TEST_CASE("exact oracle reports unreachable pairs") {
    PlanarGraph g(3);
    g.add_edge(0, 1, 4);
    ExactOracle o(g);
    CHECK(o.distance(0, 2) == kUnreachable);
    CHECK(o.distance(2, 2) == 0);
}

TEST_CASE("induced subgraph keeps order, weights and embedding") {
    PlanarGraph g = make_weighted_grid(5, 5, 9, 13);
    // 3x3 block in the middle
    std::vector<NodeId> keep;
    for (NodeId r = 1; r <= 3; ++r)
        for (NodeId c = 1; c <= 3; ++c) keep.push_back(r * 5 + c);
    std::vector<NodeId> back;
    PlanarGraph sub = g.induced(keep, &back);
    CHECK(sub.n() == 9);
    CHECK(sub.m() == 12);
    CHECK(sub.embedded());
    CHECK(sub.face_count() == 2 - 9 + 12);
    for (EdgeId e = 0; e < sub.m(); ++e) {
        const Edge& ed = sub.edge(e);
        EdgeId orig = g.find_edge(back[ed.u], back[ed.v]);
        REQUIRE(orig != kInvalidEdge);
        CHECK(g.edge(orig).w == ed.w);
    }
    // distances inside the block never beat the full graph
    ExactOracle whole(g), part(sub);
    for (NodeId a = 0; a < sub.n(); ++a)
        for (NodeId b = 0; b < sub.n(); ++b)
            CHECK(part.distance(a, b) >= whole.distance(back[a], back[b]));
}

TEST_CASE("components are labeled consistently") {
    PlanarGraph g(5);
    g.add_edge(0, 1, 1);
    g.add_edge(3, 4, 1);
    auto [comp, ncomp] = g.components();
    CHECK(ncomp == 3);
    CHECK(comp[0] == comp[1]);
    CHECK(comp[3] == comp[4]);
    CHECK(comp[0] != comp[2]);
    CHECK(comp[2] != comp[3]);
    CHECK(!g.connected());
    CHECK(make_grid(2, 2).connected());
}

TEST_CASE("embed: K4 has four faces") {
    PlanarGraph k4(4);
    for (NodeId u = 0; u < 4; ++u)
        for (NodeId v = u + 1; v < 4; ++v) k4.add_edge(u, v, 1);
    embed(k4);
    CHECK(k4.embedded());
    CHECK(k4.face_count() == 4);
}

TEST_CASE("embed: K5 and K33 are rejected") {
    PlanarGraph k5(5);
    for (NodeId u = 0; u < 5; ++u)
        for (NodeId v = u + 1; v < 5; ++v) k5.add_edge(u, v, 1);
    CHECK_THROWS_AS(embed(k5), NonPlanarError);
    CHECK(!is_planar(k5));

    PlanarGraph k33(6);
    for (NodeId u = 0; u < 3; ++u)
        for (NodeId v = 3; v < 6; ++v) k33.add_edge(u, v, 1);
    CHECK_THROWS_AS(embed(k33), NonPlanarError);
    CHECK(!is_planar(k33));
}

TEST_CASE("embed: grid read back from dimacs") {
    PlanarGraph g = parse_dimacs(serialize_dimacs(make_grid(10, 10)));
    CHECK(!g.embedded());
    embed(g);
    CHECK(g.embedded());
    CHECK(g.n() == 100);
    CHECK(g.m() == 180);
    CHECK(g.face_count() == 82);
    CHECK(is_planar(g));
}

TEST_CASE("triangulate: already triangular graphs are unchanged") {
    PlanarGraph tri(3);
    tri.add_edge(0, 1, 2);
    tri.add_edge(1, 2, 3);
    tri.add_edge(2, 0, 4);
    embed(tri);
    PlanarGraph out = triangulate(tri);
    CHECK(out.m() == 3);
    CHECK(out.n() == 3);
    for (EdgeId e = 0; e < out.m(); ++e) CHECK(out.edge(e).original);
}

TEST_CASE("triangulate: four cycle gains one chord") {
    PlanarGraph cyc = parse_dimacs("p sp 4 4\na 1 2 1\na 2 3 1\na 3 4 1\na 4 1 1\n");
    embed(cyc);
    PlanarGraph out = triangulate(cyc);
    CHECK(out.m() == 6);  // 3n - 6
    std::size_t fills = 0;
    for (EdgeId e = 0; e < out.m(); ++e)
        if (!out.edge(e).original) ++fills;
    CHECK(fills == 2);
    CHECK(out.face_count() == 2 - out.n() + out.m());
}

TEST_CASE("triangulate: 5x5 grid reaches m = 69") {
    PlanarGraph out = triangulate(make_grid(5, 5));
    CHECK(out.n() == 25);
    CHECK(out.m() == 69);
}

TEST_CASE("triangulate: trees, paths and stars") {
    // path of four nodes
    PlanarGraph path(4);
    path.add_edge(0, 1, 1);
    path.add_edge(1, 2, 1);
    path.add_edge(2, 3, 1);
    embed(path);
    CHECK(triangulate(path).m() == 6);

    // star
    PlanarGraph star(6);
    for (NodeId v = 1; v < 6; ++v) star.add_edge(0, v, 1);
    embed(star);
    CHECK(triangulate(star).m() == 12);

    // lopsided tree
    PlanarGraph tree(7);
    tree.add_edge(0, 1, 1);
    tree.add_edge(0, 2, 1);
    tree.add_edge(1, 3, 1);
    tree.add_edge(1, 4, 1);
    tree.add_edge(4, 5, 1);
    tree.add_edge(4, 6, 1);
    embed(tree);
    CHECK(triangulate(tree).m() == 15);
}

TEST_CASE("triangulate: fill edges never change distances") {
    PlanarGraph g = make_weighted_grid(6, 5, 11, 17);
    PlanarGraph t = triangulate(g);
    REQUIRE(t.m() == 3 * t.n() - 6);
    Weight fill_w = 1 + Weight(g.n()) * g.max_weight();
    for (EdgeId e = 0; e < t.m(); ++e)
        if (!t.edge(e).original) CHECK(t.edge(e).w == fill_w);
    ExactOracle before(g), after(t);
    for (NodeId u = 0; u < g.n(); ++u)
        for (NodeId v = u + 1; v < g.n(); ++v)
            CHECK(before.distance(u, v) == after.distance(u, v));
}

TEST_CASE("triangulate: deleted grids with bridges") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        PlanarGraph g = make_deleted_grid(7, 7, 0.25, seed);
        PlanarGraph t = triangulate(g);
        CHECK(t.m() == 3 * t.n() - 6);
        CHECK(t.face_count() == 2 - t.n() + t.m());
        ShortestPathTree a = sssp(g, 0), b = sssp(t, 0);
        for (NodeId v = 0; v < g.n(); ++v) CHECK(a.dist[v] == b.dist[v]);
    }
}

TEST_CASE("triangulate rejects unembedded or disconnected input") {
    PlanarGraph g = parse_dimacs("p sp 4 2\na 1 2 1\na 3 4 1\n");
    CHECK_THROWS_AS(triangulate(g), ParameterError);  // not embedded
    PlanarGraph h(4);
    h.add_edge(0, 1, 1);
    h.add_edge(2, 3, 1);
    h.set_rotations({{0}, {0}, {1}, {1}});
    CHECK_THROWS_AS(triangulate(h), ParameterError);  // not connected
}

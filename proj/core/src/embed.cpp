#include "planar/embed.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/property_map/property_map.hpp>

namespace planar {

namespace {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                          boost::property<boost::edge_index_t, std::size_t>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

BoostGraph to_boost(const PlanarGraph& g) {
    BoostGraph bg(g.n());
    for (EdgeId e = 0; e < g.m(); ++e)
        boost::add_edge(g.edge(e).u, g.edge(e).v, e, bg);
    return bg;
}

}  // namespace

void embed(PlanarGraph& g) {
    if (g.n() == 0) return;
    // counting bound first: a planar graph cannot have that many edges
    if (g.n() >= 3 && g.m() > 3 * g.n() - 6)
        throw NonPlanarError("too many edges for a planar graph");

    BoostGraph bg = to_boost(g);
    std::vector<std::vector<BoostEdge>> storage(g.n());
    auto emb = boost::make_iterator_property_map(storage.begin(),
                                                 boost::get(boost::vertex_index, bg));
    bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg,
        boost::boyer_myrvold_params::embedding = emb);
    if (!planar) throw NonPlanarError("non-planar");

    auto index = boost::get(boost::edge_index, bg);
    std::vector<std::vector<EdgeId>> rot(g.n());
    for (NodeId u = 0; u < g.n(); ++u) {
        rot[u].reserve(storage[u].size());
        for (const BoostEdge& be : storage[u]) rot[u].push_back(EdgeId(index[be]));
    }
    g.set_rotations(std::move(rot), /*check=*/true);
}

bool is_planar(const PlanarGraph& g) {
    if (g.n() == 0) return true;
    if (g.n() >= 3 && g.m() > 3 * g.n() - 6) return false;
    BoostGraph bg = to_boost(g);
    return boost::boyer_myrvold_planarity_test(bg);
}

}  // namespace planar

#include "planar/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace planar {

namespace {

// grid node at (r, c); edges run east and south of each node
NodeId grid_node(std::size_t cols, std::size_t r, std::size_t c) {
    return NodeId(r * cols + c);
}

// Build the grid topology and a rotation system read off the drawing
// (neighbors in the cyclic order east, north, west, south).
PlanarGraph grid_skeleton(std::size_t rows, std::size_t cols,
                          const std::vector<Weight>& weights) {
    if (rows < 1 || cols < 1) throw ParameterError("grid needs rows, cols >= 1");
    PlanarGraph g(rows * cols);
    std::size_t next_weight = 0;
    auto draw = [&]() -> Weight {
        return weights.empty() ? 1 : weights[next_weight++];
    };
    // horizontal edges first (row major), then vertical (row major)
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c + 1 < cols; ++c)
            g.add_edge(grid_node(cols, r, c), grid_node(cols, r, c + 1), draw());
    for (std::size_t r = 0; r + 1 < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            g.add_edge(grid_node(cols, r, c), grid_node(cols, r + 1, c), draw());

    std::vector<std::vector<EdgeId>> rot(g.n());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            NodeId u = grid_node(cols, r, c);
            auto push = [&](std::size_t rr, std::size_t cc) {
                EdgeId e = g.find_edge(u, grid_node(cols, rr, cc));
                if (e != kInvalidEdge) rot[u].push_back(e);
            };
            if (c + 1 < cols) push(r, c + 1);  // east
            if (r > 0) push(r - 1, c);         // north
            if (c > 0) push(r, c - 1);         // west
            if (r + 1 < rows) push(r + 1, c);  // south
        }
    }
    g.set_rotations(std::move(rot));
    return g;
}

}  // namespace

PlanarGraph make_grid(std::size_t rows, std::size_t cols) {
    return grid_skeleton(rows, cols, {});
}

PlanarGraph make_weighted_grid(std::size_t rows, std::size_t cols, Weight max_w,
                               std::uint64_t seed) {
    if (rows < 1 || cols < 1) throw ParameterError("grid needs rows, cols >= 1");
    if (max_w < 1) throw ParameterError("max weight must be at least 1");
    std::size_t m = rows * (cols - 1) + (rows - 1) * cols;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Weight> dist(1, max_w);
    std::vector<Weight> weights(m);
    for (auto& w : weights) w = dist(rng);
    return grid_skeleton(rows, cols, weights);
}

PlanarGraph make_deleted_grid(std::size_t rows, std::size_t cols, double delete_fraction,
                              std::uint64_t seed) {
    if (delete_fraction < 0.0 || delete_fraction >= 1.0)
        throw ParameterError("delete fraction must be in [0, 1)");
    PlanarGraph full = grid_skeleton(rows, cols, {});
    std::size_t m = full.m();
    std::size_t k = std::size_t(std::llround(delete_fraction * double(m)));
    if (k == 0) return full;
    if (full.n() >= 1 && m - k < full.n() - 1)
        throw ParameterError("delete fraction leaves too few edges to stay connected");

    std::mt19937_64 rng(seed);
    std::vector<EdgeId> ids(m);
    for (EdgeId e = 0; e < m; ++e) ids[e] = e;

    constexpr int kMaxAttempts = 64;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::shuffle(ids.begin(), ids.end(), rng);
        std::vector<bool> dead(m, false);
        for (std::size_t i = 0; i < k; ++i) dead[ids[i]] = true;

        PlanarGraph g(full.n());
        std::vector<EdgeId> edge_map(m, kInvalidEdge);
        for (EdgeId e = 0; e < m; ++e) {
            if (dead[e]) continue;
            const Edge& ed = full.edge(e);
            edge_map[e] = g.add_edge(ed.u, ed.v, ed.w);
        }
        if (!g.connected()) continue;

        std::vector<std::vector<EdgeId>> rot(g.n());
        for (NodeId u = 0; u < full.n(); ++u)
            for (EdgeId e : full.incident(u))
                if (edge_map[e] != kInvalidEdge) rot[u].push_back(edge_map[e]);
        g.set_rotations(std::move(rot));
        return g;
    }
    throw ParameterError("could not keep the grid connected after " +
                         std::to_string(kMaxAttempts) + " deletion draws");
}

PlanarGraph generate_from_description(const std::string& desc) {
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (true) {
            std::size_t next = s.find(sep, pos);
            parts.push_back(s.substr(pos, next - pos));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return parts;
    };
    auto parse_dims = [&](const std::string& s) -> std::pair<std::size_t, std::size_t> {
        auto x = s.find('x');
        if (x == std::string::npos)
            throw ParseError("bad grid dimensions '" + s + "', expected RxC");
        try {
            return {std::stoul(s.substr(0, x)), std::stoul(s.substr(x + 1))};
        } catch (const std::exception&) {
            throw ParseError("bad grid dimensions '" + s + "', expected RxC");
        }
    };

    auto parts = split(desc, ':');
    try {
        if (parts[0] == "grid" && parts.size() == 2) {
            auto [r, c] = parse_dims(parts[1]);
            return make_grid(r, c);
        }
        if (parts[0] == "wgrid" && parts.size() == 4) {
            auto [r, c] = parse_dims(parts[1]);
            return make_weighted_grid(r, c, std::stoll(parts[2]), std::stoull(parts[3]));
        }
        if (parts[0] == "delgrid" && parts.size() == 4) {
            auto [r, c] = parse_dims(parts[1]);
            return make_deleted_grid(r, c, std::stod(parts[2]), std::stoull(parts[3]));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const ParameterError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad generator description '" + desc + "'");
    }
    throw ParseError("unknown generator '" + desc +
                     "', expected grid:RxC, wgrid:RxC:MAXW:SEED or delgrid:RxC:FRAC:SEED");
}

}  // namespace planar

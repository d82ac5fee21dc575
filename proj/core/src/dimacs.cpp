#include "planar/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace planar {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << data;
}

struct LineScanner {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t lineno = 0;

    bool next(std::string_view& line) {
        while (pos < text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            line = text.substr(pos, end - pos);
            pos = end + 1;
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (line.find_first_not_of(" \t") != std::string_view::npos) return true;
        }
        return false;
    }
};

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::int64_t parse_int(std::string_view tok, std::size_t lineno, const char* what) {
    std::int64_t val = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), val);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError("line " + std::to_string(lineno) + ": bad " + what + " '" +
                         std::string(tok) + "'");
    return val;
}

}  // namespace

PlanarGraph parse_dimacs(std::string_view text) {
    LineScanner sc{text};
    std::string_view line;

    std::int64_t n = -1, arcs_declared = -1;
    std::int64_t arcs_seen = 0;
    PlanarGraph g;
    // (min,max) endpoint pair -> edge id, for duplicate-arc handling
    std::unordered_map<std::uint64_t, EdgeId> by_pair;

    while (sc.next(line)) {
        auto tok = split_ws(line);
        if (tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (n >= 0) throw ParseError("line " + std::to_string(sc.lineno) +
                                         ": repeated problem line");
            if (tok.size() != 4 || tok[1] != "sp")
                throw ParseError("line " + std::to_string(sc.lineno) +
                                 ": expected 'p sp <n> <m>'");
            n = parse_int(tok[2], sc.lineno, "node count");
            arcs_declared = parse_int(tok[3], sc.lineno, "arc count");
            if (n < 1) throw ValidationError("line " + std::to_string(sc.lineno) +
                                             ": node count must be at least 1");
            if (arcs_declared < 0)
                throw ValidationError("line " + std::to_string(sc.lineno) +
                                      ": negative arc count");
            g = PlanarGraph(std::size_t(n));
            continue;
        }
        if (tok[0] == "a") {
            if (n < 0) throw ParseError("line " + std::to_string(sc.lineno) +
                                        ": arc before problem line");
            if (tok.size() != 4)
                throw ParseError("line " + std::to_string(sc.lineno) +
                                 ": expected 'a <u> <v> <w>'");
            std::int64_t u = parse_int(tok[1], sc.lineno, "node id");
            std::int64_t v = parse_int(tok[2], sc.lineno, "node id");
            std::int64_t w = parse_int(tok[3], sc.lineno, "weight");
            ++arcs_seen;
            if (u < 1 || u > n || v < 1 || v > n)
                throw ValidationError("line " + std::to_string(sc.lineno) +
                                      ": node id out of range");
            if (u == v)
                throw ValidationError("line " + std::to_string(sc.lineno) + ": self loop");
            if (w < 0)
                throw ValidationError("line " + std::to_string(sc.lineno) +
                                      ": negative weight");
            NodeId a = NodeId(u - 1), b = NodeId(v - 1);
            std::uint64_t key = std::uint64_t(std::min(a, b)) << 32 | std::max(a, b);
            auto it = by_pair.find(key);
            if (it != by_pair.end()) {
                if (g.edge(it->second).w != w)
                    throw ValidationError("line " + std::to_string(sc.lineno) +
                                          ": conflicting duplicate arc");
                continue;
            }
            by_pair.emplace(key, g.add_edge(a, b, w));
            continue;
        }
        throw ParseError("line " + std::to_string(sc.lineno) + ": unknown line type '" +
                         std::string(tok[0]) + "'");
    }
    if (n < 0) throw ParseError("missing problem line");
    if (arcs_seen != arcs_declared)
        throw ParseError("arc count mismatch: header says " + std::to_string(arcs_declared) +
                         ", file has " + std::to_string(arcs_seen));
    return g;
}

PlanarGraph load_dimacs(const std::string& path) { return parse_dimacs(read_file(path)); }

std::string serialize_dimacs(const PlanarGraph& g) {
    std::string out;
    out += "p sp " + std::to_string(g.n()) + " " + std::to_string(2 * g.m()) + "\n";
    for (EdgeId e = 0; e < g.m(); ++e) {
        const Edge& ed = g.edge(e);
        std::string w = std::to_string(ed.w);
        out += "a " + std::to_string(ed.u + 1) + " " + std::to_string(ed.v + 1) + " " + w + "\n";
        out += "a " + std::to_string(ed.v + 1) + " " + std::to_string(ed.u + 1) + " " + w + "\n";
    }
    return out;
}

void save_dimacs(const PlanarGraph& g, const std::string& path) {
    write_file(path, serialize_dimacs(g));
}

std::vector<std::vector<NodeId>> parse_embedding(std::string_view text) {
    std::vector<std::vector<NodeId>> cyclic;
    std::size_t pos = 0, lineno = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::vector<NodeId> row;
        for (auto tok : split_ws(line)) {
            std::int64_t id = parse_int(tok, lineno, "neighbor id");
            if (id < 1) throw ValidationError("line " + std::to_string(lineno) +
                                              ": neighbor id out of range");
            row.push_back(NodeId(id - 1));
        }
        cyclic.push_back(std::move(row));
    }
    return cyclic;
}

void apply_embedding(PlanarGraph& g, const std::vector<std::vector<NodeId>>& cyclic) {
    if (cyclic.size() != g.n())
        throw ValidationError("embedding has " + std::to_string(cyclic.size()) +
                              " rows for " + std::to_string(g.n()) + " nodes");
    std::vector<std::vector<EdgeId>> rot(g.n());
    for (NodeId u = 0; u < g.n(); ++u) {
        rot[u].reserve(cyclic[u].size());
        for (NodeId v : cyclic[u]) {
            if (v >= g.n())
                throw ValidationError("embedding row " + std::to_string(u + 1) +
                                      ": neighbor id out of range");
            EdgeId e = g.find_edge(u, v);
            if (e == kInvalidEdge)
                throw ValidationError("embedding row " + std::to_string(u + 1) +
                                      ": no edge to node " + std::to_string(v + 1));
            rot[u].push_back(e);
        }
    }
    g.set_rotations(std::move(rot), /*check=*/true);
}

void load_embedding(PlanarGraph& g, const std::string& path) {
    apply_embedding(g, parse_embedding(read_file(path)));
}

std::string serialize_embedding(const PlanarGraph& g) {
    std::string out;
    for (NodeId u = 0; u < g.n(); ++u) {
        const auto& rot = g.incident(u);
        for (std::size_t i = 0; i < rot.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(g.other(rot[i], u) + 1);
        }
        out += '\n';
    }
    return out;
}

void save_embedding(const PlanarGraph& g, const std::string& path) {
    write_file(path, serialize_embedding(g));
}

bool normalized(const PlanarGraph& g) {
    for (const Edge& e : g.edges())
        if (e.w < 1) return false;
    return true;
}

}  // namespace planar

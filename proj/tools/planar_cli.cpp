// planar_cli: build, time, and verify planar distance oracles from the
// command line.
//
//   build    construct an oracle, report build time and space
//   query    build, then time a sampled query workload
//   verify   query, then check every estimate against exact distances
//   sweep    run a grid of oracle/eps configs and aggregate tradeoffs
//
// Reports are versioned JSON (schema pdo-report-v1 / pdo-sweep-v1).
// Space figures count abstract words (stored ids and distances), not
// bytes.  Query timing excludes a fixed warmup prefix.  verify and sweep
// exit nonzero when any estimate falls below the exact distance or
// exceeds the oracle's stretch bound.  PDO_THREADS sets the worker count
// for the verification pass.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "planar/dimacs.hpp"
#include "planar/embed.hpp"
#include "planar/generate.hpp"
#include "planar/graph.hpp"
#include "planar/oracle.hpp"
#include "planar/shortest_path.hpp"
#include "planar/types.hpp"

namespace {

using nlohmann::ordered_json;
using planar::NodeId;
using planar::Weight;

constexpr char kReportSchema[] = "pdo-report-v1";
constexpr char kSweepSchema[] = "pdo-sweep-v1";
constexpr std::size_t kAllPairsLimit = 3000;
constexpr std::size_t kWarmupQueries = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct RunConfig {
    std::string input;
    std::string gen;
    std::string oracle = "exact";
    double eps = 0.25;
    double theta = 0.0;
    std::uint64_t seed = 1;
    std::string pairs = "1000";
    std::string report;  // empty: stdout
    Weight delta = 0;    // additive oracle; 0 picks the diameter bound
    double dfactor = 1.0;
    bool stable = false;  // zero timing fields for byte-stable reports
};

enum class Mode { build, query, verify };

int thread_count() {
    const char* s = std::getenv("PDO_THREADS");
    if (s == nullptr || *s == '\0') return 1;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || v < 1)
        throw planar::ParameterError("PDO_THREADS must be a positive integer, got '" +
                                     std::string(s) + "'");
    return static_cast<int>(std::min(v, 64L));
}

planar::Rational rational_eps(double eps) {
    if (!std::isfinite(eps) || eps <= 0.0 || eps > 1.0)
        throw planar::ParameterError("--eps must lie in (0, 1], got " + std::to_string(eps));
    const std::int64_t den = 1000000;
    std::int64_t num = std::llround(eps * double(den));
    if (num == 0) num = 1;
    std::int64_t g = std::gcd(num, den);
    return planar::Rational{num / g, den / g};
}

planar::PlanarGraph load_graph(const RunConfig& cfg) {
    if (cfg.input.empty() == cfg.gen.empty())
        throw planar::ParameterError("pass exactly one of --input and --gen");
    if (!cfg.gen.empty()) return planar::generate_from_description(cfg.gen);
    planar::PlanarGraph g = planar::load_dimacs(cfg.input);
    planar::embed(g);  // throws NonPlanarError with a witness
    return g;
}

planar::OracleConfig oracle_config(const RunConfig& cfg, const planar::PlanarGraph& g) {
    planar::OracleConfig oc;
    oc.kind = planar::oracle_kind_from_string(cfg.oracle);
    oc.eps = rational_eps(cfg.eps);
    if (oc.kind == planar::OracleKind::eps_poly) {
        oc.weights.kind = planar::WeightClass::polynomial;
    } else if (cfg.theta > 0.0) {
        oc.weights.kind = planar::WeightClass::moderate;
        oc.weights.theta = cfg.theta;
    }
    if (oc.kind == planar::OracleKind::additive) {
        oc.additive_delta = cfg.delta > 0 ? cfg.delta : planar::diameter_bounds(g).ub;
        oc.diameter_factor = cfg.dfactor;
    }
    return oc;
}

// ---- query workload ----

std::vector<std::pair<NodeId, NodeId>> make_pairs(const RunConfig& cfg, std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> ps;
    if (cfg.pairs == "all") {
        if (n > kAllPairsLimit)
            throw planar::ParameterError(
                "--pairs all is limited to " + std::to_string(kAllPairsLimit) +
                " nodes (this graph has " + std::to_string(n) + "); pass a pair count");
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v) ps.emplace_back(u, v);
        return ps;
    }
    std::size_t count = 0;
    try {
        std::size_t pos = 0;
        count = std::stoull(cfg.pairs, &pos);
        if (pos != cfg.pairs.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
        throw planar::ParameterError("--pairs expects a count or 'all', got '" + cfg.pairs +
                                     "'");
    }
    if (n < 2) return ps;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    ps.reserve(count);
    while (ps.size() < count) {
        auto u = NodeId(pick(rng));
        auto v = NodeId(pick(rng));
        if (u == v) continue;
        ps.emplace_back(u, v);
    }
    // sources grouped so the verification pass runs one search per source
    std::sort(ps.begin(), ps.end());
    return ps;
}

struct QueryRun {
    std::vector<Weight> est;
    std::vector<double> ns;
    double seconds = 0.0;
    std::size_t warmup = 0;
};

QueryRun run_queries(const planar::DistanceOracle& o,
                     const std::vector<std::pair<NodeId, NodeId>>& ps) {
    QueryRun qr;
    if (ps.empty()) return qr;
    qr.warmup = kWarmupQueries;
    for (std::size_t i = 0; i < kWarmupQueries; ++i) {
        const auto& [u, v] = ps[i % ps.size()];
        volatile Weight sink = o.distance(u, v);
        (void)sink;
    }
    qr.est.reserve(ps.size());
    qr.ns.reserve(ps.size());
    auto t0 = Clock::now();
    for (const auto& [u, v] : ps) {
        auto q0 = Clock::now();
        Weight d = o.distance(u, v);
        auto q1 = Clock::now();
        qr.est.push_back(d);
        qr.ns.push_back(std::chrono::duration<double, std::nano>(q1 - q0).count());
    }
    qr.seconds = seconds_since(t0);
    return qr;
}

double percentile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    auto idx = std::size_t(std::llround(q * double(sorted.size() - 1)));
    return sorted[std::min(idx, sorted.size() - 1)];
}

// ---- verification ----

struct BoundSpec {
    std::string kind = "exact";
    double value = 1.0;
    std::function<bool(Weight, Weight)> ok;
};

BoundSpec make_bound(const planar::DistanceOracle& o, const planar::OracleConfig& oc) {
    BoundSpec b;
    const planar::Rational eps = oc.eps;
    switch (o.kind()) {
        case planar::OracleKind::exact:
            b.kind = "exact";
            b.value = 1.0;
            b.ok = [](Weight est, Weight d) { return est == d; };
            break;
        case planar::OracleKind::const_stretch: {
            double rho = o.stats().at("rho").get<double>();
            planar::Rational six{eps.num * 6, eps.den};
            b.kind = "multiplicative";
            b.value = std::max(1.0 + 6.0 * eps.value(), 4.0 * rho);
            b.ok = [six, rho](Weight est, Weight d) {
                return planar::within_factor(est, d, six) ||
                       double(est) <= 4.0 * rho * double(d) * (1.0 + 1e-12);
            };
            break;
        }
        case planar::OracleKind::eps_moderate:
        case planar::OracleKind::eps_poly:
            b.kind = "multiplicative";
            b.value = 1.0 + eps.value();
            b.ok = [eps](Weight est, Weight d) { return planar::within_factor(est, d, eps); };
            break;
        case planar::OracleKind::additive: {
            planar::Rational six{eps.num * 6, eps.den};
            Weight delta = oc.additive_delta;
            b.kind = "additive";
            b.value = 6.0 * eps.value() * double(delta);
            b.ok = [six, delta](Weight est, Weight d) {
                return planar::within_additive(est, d, delta, six);
            };
            break;
        }
    }
    return b;
}

struct Verdict {
    std::size_t lower_bound = 0;
    std::size_t stretch_bound = 0;
    std::size_t unreachable = 0;
    Weight max_add_error = 0;
    std::vector<double> ratios;

    std::size_t total() const { return lower_bound + stretch_bound + unreachable; }
};

// one exact search per distinct source; sources are split across workers
// and joined once at the end
Verdict verify_pairs(const planar::PlanarGraph& g,
                     const std::vector<std::pair<NodeId, NodeId>>& ps,
                     const std::vector<Weight>& est, const BoundSpec& bound, int threads) {
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    for (std::size_t i = 0; i < ps.size();) {
        std::size_t j = i;
        while (j < ps.size() && ps[j].first == ps[i].first) ++j;
        groups.emplace_back(i, j);
        i = j;
    }

    Verdict total;
    std::atomic<std::size_t> next{0};
    std::mutex merge_mu;
    auto work = [&]() {
        Verdict local;
        for (;;) {
            std::size_t gi = next.fetch_add(1);
            if (gi >= groups.size()) break;
            auto [lo, hi] = groups[gi];
            planar::ShortestPathTree spt = planar::sssp(g, ps[lo].first);
            for (std::size_t i = lo; i < hi; ++i) {
                Weight d = spt.dist[ps[i].second];
                Weight e = est[i];
                if (d >= planar::kUnreachable) {
                    if (e != planar::kUnreachable) ++local.unreachable;
                    continue;
                }
                if (e < d) ++local.lower_bound;
                if (!bound.ok(e, d)) ++local.stretch_bound;
                if (d > 0) local.ratios.push_back(double(e) / double(d));
                local.max_add_error = std::max(local.max_add_error, e - d);
            }
        }
        std::lock_guard<std::mutex> lk(merge_mu);
        total.lower_bound += local.lower_bound;
        total.stretch_bound += local.stretch_bound;
        total.unreachable += local.unreachable;
        total.max_add_error = std::max(total.max_add_error, local.max_add_error);
        total.ratios.insert(total.ratios.end(), local.ratios.begin(), local.ratios.end());
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    // canonical order: the merge order above depends on thread timing
    std::sort(total.ratios.begin(), total.ratios.end());
    return total;
}

// ---- report assembly ----

ordered_json config_json(const RunConfig& cfg, const planar::OracleConfig& oc, int threads) {
    ordered_json j;
    j["source"] = cfg.gen.empty() ? cfg.input : cfg.gen;
    j["oracle"] = planar::to_string(oc.kind);
    j["eps"] = cfg.eps;
    j["theta"] = cfg.theta;
    j["seed"] = cfg.seed;
    j["pairs"] = cfg.pairs;
    j["threads"] = threads;
    j["stable_timing"] = cfg.stable;
    if (oc.kind == planar::OracleKind::additive) {
        j["delta"] = oc.additive_delta;
        j["diameter_factor"] = oc.diameter_factor;
    }
    return j;
}

ordered_json graph_json(const planar::PlanarGraph& g, double theta) {
    Weight max_w = 0;
    for (const auto& e : g.edges()) max_w = std::max(max_w, e.w);
    ordered_json j;
    j["nodes"] = g.n();
    j["edges"] = g.m();
    j["max_weight"] = max_w;
    j["weight_constant"] = planar::measure_weight_constant(g, theta);
    return j;
}

void write_report(const ordered_json& report, const std::string& path) {
    std::string text = report.dump(2);
    text.push_back('\n');
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw planar::Error("cannot open report file: " + path);
    out << text;
}

// builds, queries, verifies per `mode`; fills `out`; returns the exit code
int run_one(const RunConfig& cfg, Mode mode, ordered_json& out) {
    planar::PlanarGraph g = load_graph(cfg);
    planar::OracleConfig oc = oracle_config(cfg, g);
    int threads = thread_count();

    auto t0 = Clock::now();
    std::unique_ptr<planar::DistanceOracle> oracle = planar::build_oracle(g, oc);
    double build_s = seconds_since(t0);

    out["schema"] = kReportSchema;
    out["command"] = mode == Mode::build ? "build" : (mode == Mode::query ? "query" : "verify");
    out["config"] = config_json(cfg, oc, threads);
    out["graph"] = graph_json(g, cfg.theta);
    out["build"] = ordered_json{{"seconds", cfg.stable ? 0.0 : build_s},
                                {"space_words", oracle->space_words()},
                                {"stats", oracle->stats()}};
    if (mode == Mode::build) return 0;

    std::vector<std::pair<NodeId, NodeId>> ps = make_pairs(cfg, g.n());
    QueryRun qr = run_queries(*oracle, ps);
    std::vector<double> sorted_ns = qr.ns;
    std::sort(sorted_ns.begin(), sorted_ns.end());
    bool z = cfg.stable;
    out["query"] = ordered_json{
        {"count", ps.size()},
        {"warmup", qr.warmup},
        {"seconds", z ? 0.0 : qr.seconds},
        {"ns", ordered_json{{"p50", z ? 0.0 : percentile(sorted_ns, 0.50)},
                            {"p90", z ? 0.0 : percentile(sorted_ns, 0.90)},
                            {"p99", z ? 0.0 : percentile(sorted_ns, 0.99)},
                            {"max", z ? 0.0 : (sorted_ns.empty() ? 0.0 : sorted_ns.back())}}}};
    if (mode == Mode::query) return 0;

    BoundSpec bound = make_bound(*oracle, oc);
    Verdict v = verify_pairs(g, ps, qr.est, bound, threads);
    double mean = v.ratios.empty()
                      ? 0.0
                      : std::accumulate(v.ratios.begin(), v.ratios.end(), 0.0) /
                            double(v.ratios.size());
    ordered_json stretch{{"pairs", v.ratios.size()},
                         {"max", v.ratios.empty() ? 0.0 : v.ratios.back()},
                         {"mean", mean},
                         {"p99", percentile(v.ratios, 0.99)}};
    if (oc.kind == planar::OracleKind::additive) stretch["max_additive_error"] = v.max_add_error;
    out["stretch"] = stretch;
    out["bound"] = ordered_json{{"kind", bound.kind}, {"value", bound.value}};
    out["violations"] = ordered_json{{"lower_bound", v.lower_bound},
                                     {"stretch_bound", v.stretch_bound},
                                     {"unreachable", v.unreachable},
                                     {"total", v.total()}};
    return v.total() > 0 ? 1 : 0;
}

int run_single(const RunConfig& cfg, Mode mode) {
    ordered_json out;
    int code = run_one(cfg, mode, out);
    write_report(out, cfg.report);
    return code;
}

int run_sweep(const RunConfig& base, const std::vector<std::string>& oracles,
              const std::vector<double>& eps_list) {
    ordered_json out;
    out["schema"] = kSweepSchema;
    out["config"] = ordered_json{{"source", base.gen.empty() ? base.input : base.gen},
                                 {"oracles", oracles},
                                 {"eps_list", eps_list},
                                 {"theta", base.theta},
                                 {"seed", base.seed},
                                 {"pairs", base.pairs},
                                 {"stable_timing", base.stable}};
    ordered_json runs = ordered_json::array();
    ordered_json aggregate = ordered_json::array();
    ordered_json failures = ordered_json::array();
    int worst = 0;
    for (const std::string& kind : oracles) {
        for (double eps : eps_list) {
            RunConfig rc = base;
            rc.oracle = kind;
            rc.eps = eps;
            rc.report.clear();
            ordered_json member;
            try {
                worst = std::max(worst, run_one(rc, Mode::verify, member));
                ordered_json row;
                row["oracle"] = kind;
                row["eps"] = eps;
                row["space_words"] = member["build"]["space_words"];
                row["build_seconds"] = member["build"]["seconds"];
                row["p50_ns"] = member["query"]["ns"]["p50"];
                row["space_time_product"] =
                    member["build"]["space_words"].get<double>() *
                    member["query"]["ns"]["p50"].get<double>();
                if (member["build"]["stats"].contains("max_label_entries"))
                    row["max_label_entries"] = member["build"]["stats"]["max_label_entries"];
                row["max_stretch"] = member["stretch"]["max"];
                row["violations"] = member["violations"]["total"];
                aggregate.push_back(std::move(row));
                runs.push_back(std::move(member));
            } catch (const std::exception& e) {
                failures.push_back(ordered_json{{"oracle", kind}, {"eps", eps},
                                                {"error", e.what()}});
            }
        }
    }
    out["runs"] = std::move(runs);
    out["aggregate"] = std::move(aggregate);
    out["failures"] = failures;
    write_report(out, base.report);
    if (!failures.empty()) return 2;
    return worst;
}

void add_run_options(CLI::App* sub, RunConfig& cfg, bool with_oracle, bool with_pairs) {
    sub->add_option("--input", cfg.input,
                    "graph file, shortest-path arc format (p sp / a lines)");
    sub->add_option("--gen", cfg.gen,
                    "generator spec: grid:RxC, wgrid:RxC:MAXW:SEED, delgrid:RxC:FRAC:SEED");
    if (with_oracle) {
        sub->add_option("--oracle", cfg.oracle,
                        "exact | const | eps-moderate | eps-poly | additive");
        sub->add_option("--eps", cfg.eps, "accuracy parameter in (0, 1]");
        sub->add_option("--delta", cfg.delta,
                        "additive oracle length scale (0 = diameter bound)");
        sub->add_option("--dfactor", cfg.dfactor, "additive oracle diameter factor");
    }
    sub->add_option("--theta", cfg.theta, "weight growth exponent for the moderate class");
    sub->add_option("--seed", cfg.seed, "pair sampling seed");
    if (with_pairs)
        sub->add_option("--pairs", cfg.pairs,
                        "query pair count, or 'all' (graphs up to 3000 nodes)");
    sub->add_option("--report", cfg.report, "write the JSON report here (default stdout)");
    sub->add_flag("--stable-report", cfg.stable,
                  "zero timing fields so identical runs give identical bytes");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar approximate distance oracle workbench"};
    app.require_subcommand(1);

    RunConfig cfg;
    CLI::App* cb = app.add_subcommand("build", "build an oracle, report build time and space");
    add_run_options(cb, cfg, true, false);
    CLI::App* cq = app.add_subcommand("query", "build, then time a query workload");
    add_run_options(cq, cfg, true, true);
    CLI::App* cv = app.add_subcommand(
        "verify", "build, query, and check every estimate against exact distances");
    add_run_options(cv, cfg, true, true);

    CLI::App* cs =
        app.add_subcommand("sweep", "run an oracle/eps grid and aggregate tradeoffs");
    std::vector<std::string> sweep_oracles{"const", "eps-moderate"};
    std::vector<double> sweep_eps{0.5, 0.25, 0.125};
    cs->add_option("--oracles", sweep_oracles, "comma separated oracle kinds")
        ->delimiter(',');
    cs->add_option("--eps-list", sweep_eps, "comma separated eps values")->delimiter(',');
    add_run_options(cs, cfg, false, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cb->parsed()) return run_single(cfg, Mode::build);
        if (cq->parsed()) return run_single(cfg, Mode::query);
        if (cv->parsed()) return run_single(cfg, Mode::verify);
        return run_sweep(cfg, sweep_oracles, sweep_eps);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

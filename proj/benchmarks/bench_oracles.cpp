// microbenchmarks: shortest-path search, oracle builds, oracle queries

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "planar/generate.hpp"
#include "planar/oracle.hpp"
#include "planar/shortest_path.hpp"

using namespace planar;

namespace {

PlanarGraph grid_for(std::int64_t side) { return make_grid(std::size_t(side), std::size_t(side)); }

OracleConfig config_for(OracleKind kind, const PlanarGraph& g) {
    OracleConfig cfg;
    cfg.kind = kind;
    cfg.eps = Rational{1, 4};
    if (kind == OracleKind::additive) {
        cfg.additive_delta = diameter_bounds(g).ub;
        cfg.diameter_factor = 1.0;
    }
    return cfg;
}

void bm_sssp(benchmark::State& state) {
    PlanarGraph g = grid_for(state.range(0));
    NodeId src = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sssp(g, src));
        src = (src + 17) % NodeId(g.n());
    }
    state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(g.n()));
}

void bm_build(benchmark::State& state, OracleKind kind) {
    PlanarGraph g = grid_for(state.range(0));
    OracleConfig cfg = config_for(kind, g);
    for (auto _ : state) benchmark::DoNotOptimize(build_oracle(g, cfg));
}

void bm_query(benchmark::State& state, OracleKind kind) {
    PlanarGraph g = grid_for(state.range(0));
    OracleConfig cfg = config_for(kind, g);
    std::unique_ptr<DistanceOracle> o = build_oracle(g, cfg);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<NodeId> pick(0, NodeId(g.n() - 1));
    std::vector<std::pair<NodeId, NodeId>> ps(1024);
    for (auto& p : ps) p = {pick(rng), pick(rng)};
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [u, v] = ps[i++ & 1023];
        benchmark::DoNotOptimize(o->distance(u, v));
    }
}

}  // namespace

BENCHMARK(bm_sssp)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_CAPTURE(bm_build, exact, OracleKind::exact)->Arg(64);
BENCHMARK_CAPTURE(bm_build, const_stretch, OracleKind::const_stretch)
    ->Arg(32)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_build, eps_moderate, OracleKind::eps_moderate)
    ->Arg(32)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_build, additive, OracleKind::additive)
    ->Arg(32)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_CAPTURE(bm_query, exact, OracleKind::exact)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(bm_query, const_stretch, OracleKind::const_stretch)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(bm_query, eps_moderate, OracleKind::eps_moderate)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(bm_query, additive, OracleKind::additive)->Arg(32)->Arg(64);

BENCHMARK_MAIN();

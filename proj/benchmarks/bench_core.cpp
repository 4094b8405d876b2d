#include <benchmark/benchmark.h>

#include "repknot/pairing.hpp"
#include "repknot/tb_variety.hpp"
#include "repknot/torus_variety.hpp"
#include "repknot/words.hpp"

using namespace repknot;

static void BM_WordEvaluate(benchmark::State& state) {
    TwoBridgeKnot K(int(state.range(0)), 3);
    GroupWord b = beta(K);
    Quat qx = qrot({1, 0, 0}, 1.3);
    Quat qy = qrot({0.2, 0.979795897113271, 0}, 1.3);
    for (auto _ : state) benchmark::DoNotOptimize(b.evaluate(qx, qy));
}
BENCHMARK(BM_WordEvaluate)->Arg(2)->Arg(3)->Arg(5);

static void BM_Residual(benchmark::State& state) {
    TwoBridgeKnot K(2, 3);
    SlicePoint s{1.6, 1.3};
    for (auto _ : state) benchmark::DoNotOptimize(residual(K, s).norm());
}
BENCHMARK(BM_Residual);

static void BM_FindDihedral(benchmark::State& state) {
    TwoBridgeKnot K(3, 5);
    for (auto _ : state) benchmark::DoNotOptimize(find_dihedral(K).size());
}
BENCHMARK(BM_FindDihedral);

static void BM_TrackArc(benchmark::State& state) {
    TwoBridgeKnot K(2, 3);
    SlicePoint start = find_dihedral(K).front();
    for (auto _ : state) benchmark::DoNotOptimize(track_arc(K, start, +1).pts.size());
}
BENCHMARK(BM_TrackArc);

static void BM_MeridianTraceAngle(benchmark::State& state) {
    TorusKnot T(3, 5);
    ArcDescriptor arc = enumerate_arcs(T).front();
    double psi = 1.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(meridian_trace_angle(T, arc, psi));
        psi = psi < 2.0 ? psi + 1e-6 : 1.1;
    }
}
BENCHMARK(BM_MeridianTraceAngle);

static void BM_ZetaLoopNu(benchmark::State& state) {
    TorusKnot T(2, 5);
    ArcDescriptor arc = enumerate_arcs(T).back();
    for (auto _ : state) {
        RepLoop loop = build_zeta_loop(T, arc, int(state.range(0)));
        benchmark::DoNotOptimize(nu(loop, {10, 1}).value);
    }
}
BENCHMARK(BM_ZetaLoopNu)->Arg(256)->Arg(1024);

static void BM_ClassifySurgery(benchmark::State& state) {
    TorusKnot T(3, 4);
    for (auto _ : state) {
        SurgeryVerdict v = classify_surgery(T, TorusSlope::make(T, 21, 2));
        benchmark::DoNotOptimize(v.case_number);
    }
}
BENCHMARK(BM_ClassifySurgery);

BENCHMARK_MAIN();

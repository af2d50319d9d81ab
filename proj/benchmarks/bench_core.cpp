// Microbenchmarks for the hot paths: integer diagonalization, point
// enumeration and group structure over F_p, quotient-certificate
// construction, derivation replay, and the end-to-end obstruction witness.

#include <benchmark/benchmark.h>

#include "biell/brauer.hpp"
#include "biell/catalog.hpp"
#include "biell/cycles.hpp"
#include "biell/elliptic.hpp"
#include "biell/localdata.hpp"
#include "biell/replay.hpp"
#include "biell/snf.hpp"

using namespace biell;

namespace {

IntMat dense6()
{
    const long rows[6][6] = {{20, -15, -8, -2, -13, 1},
                             {-10, -4, 20, 13, -11, -8},
                             {8, -8, -8, 8, 11, 0},
                             {15, 20, -1, 1, -1, 14},
                             {5, -14, 19, -20, -16, -1},
                             {-3, 10, -17, 18, -19, 17}};
    IntMat m(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            m.at(i, j) = rows[i][j];
    return m;
}

void BM_smith_normal_form(benchmark::State& state)
{
    const IntMat m = dense6();
    for (auto _ : state) {
        SnfResult s = smith_normal_form(m);
        benchmark::DoNotOptimize(s.diag);
    }
}
BENCHMARK(BM_smith_normal_form);

void BM_count_points(benchmark::State& state)
{
    const FpCurve E = reduce_curve(resolve_curve("33.a2"),
                                   static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        Int n = count_points(E);
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_count_points)->Arg(97)->Arg(499)->Arg(997);

void BM_group_structure(benchmark::State& state)
{
    const FpCurve E = reduce_curve(resolve_curve("33.a2"),
                                   static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        GroupStructure gs = group_structure(E);
        benchmark::DoNotOptimize(gs.invariant_factors);
    }
}
BENCHMARK(BM_group_structure)->Arg(97)->Arg(499);

void BM_universal_quotient(benchmark::State& state)
{
    const BiellipticModel m = universal_model(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        CycleClassGroup C(m);
        Coords P(m.a1.dim(), Int(0)), Q(m.a2.dim(), Int(0));
        P[0] = 1;
        Q[0] = 1;
        auto ord = C.z_order(P, Q);
        benchmark::DoNotOptimize(ord);
    }
}
BENCHMARK(BM_universal_quotient)->Arg(1)->Arg(5);

void BM_instance_quotient(benchmark::State& state)
{
    SurfaceActionSpec spec;
    spec.type = 1;
    spec.e1 = reduce_curve(resolve_curve("33.a2"), 23);
    spec.e2 = reduce_curve(resolve_curve("198.a2"), 23);
    for (const FpPoint& P : enumerate_points(spec.e1))
        if (fp_point_order(spec.e1, P) == 2) {
            spec.p0 = P;
            break;
        }
    for (auto _ : state) {
        InstanceModel im = instance_model(spec);
        CycleClassGroup C(im.model);
        benchmark::DoNotOptimize(C.group());
    }
}
BENCHMARK(BM_instance_quotient);

void BM_replay_main(benchmark::State& state)
{
    for (auto _ : state) {
        ReplayVerdict v = replay_builtin("type5_main");
        benchmark::DoNotOptimize(v.pass);
    }
}
BENCHMARK(BM_replay_main);

void BM_padic_two_torsion(benchmark::State& state)
{
    const EllipticCurve E = resolve_curve("33.a2");
    for (auto _ : state) {
        auto roots = zp_roots(E.A, E.B, 11, 20);
        benchmark::DoNotOptimize(roots);
    }
}
BENCHMARK(BM_padic_two_torsion);

void BM_obstruction_witness(benchmark::State& state)
{
    const EllipticCurve E1 = resolve_curve("33.a2");
    const EllipticCurve E2 = resolve_curve("198.a2");
    for (auto _ : state) {
        ObstructionReport rep = obstruction_witness(E1, E2, 11);
        benchmark::DoNotOptimize(rep.witness_count);
    }
}
BENCHMARK(BM_obstruction_witness);

} // namespace

BENCHMARK_MAIN();

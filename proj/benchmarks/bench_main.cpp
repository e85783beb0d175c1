#include <benchmark/benchmark.h>

#include "zmc/catalog.hpp"
#include "zmc/expr.hpp"
#include "zmc/foliation.hpp"
#include "zmc/pde.hpp"
#include "zmc/reps.hpp"

using namespace zmc;

namespace {

GridSpec square(double lo, double hi, int n) {
    GridSpec g;
    g.u_min = g.v_min = lo;
    g.u_max = g.v_max = hi;
    g.nu = g.nv = n;
    return g;
}

void BM_ExprEval(benchmark::State& state) {
    const AnalyticExpr e = parse("exp(w/3) * sin(w) + 1/(w^2 + 4)", "w");
    cplx w(0.3, 0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(e(w));
        w += cplx(1e-9, 0.0);
    }
}
BENCHMARK(BM_ExprEval);

void BM_ExprParse(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(parse("exp(w/3) * sin(w) + 1/(w^2 + 4)", "w"));
}
BENCHMARK(BM_ExprParse);

void BM_IdentityVerify(benchmark::State& state) {
    const auto inst = identity_terms("scherk2-decomp", static_cast<int>(state.range(0)));
    const auto g = square(-1.0, 1.0, 41);
    for (auto _ : state) benchmark::DoNotOptimize(verify_identity(inst, g, BranchPolicy::multiplicative));
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_IdentityVerify)->Arg(2)->Arg(5);

void BM_ResidualSweep(benchmark::State& state) {
    const auto s = builtin_surface("scherk2");
    GridSpec g = s.default_grid;
    g.nu = g.nv = 41;
    for (auto _ : state) benchmark::DoNotOptimize(residual_sweep(s, GraphEquation::minimal, g));
}
BENCHMARK(BM_ResidualSweep);

void BM_WEPoint(benchmark::State& state) {
    WEData d;
    d.f = parse("exp(w)", "w");
    d.g = parse("w^2 + 1", "w");
    for (auto _ : state) benchmark::DoNotOptimize(we_point(d, cplx(0.6, 0.4)));
}
BENCHMARK(BM_WEPoint);

void BM_WEInvert(benchmark::State& state) {
    const WEData d;
    const Vec3 X = we_point(d, cplx(0.4, 0.3));
    for (auto _ : state) benchmark::DoNotOptimize(invert_parametrization(d, X[0], X[1], cplx(0.45, 0.3)));
}
BENCHMARK(BM_WEInvert);

void BM_BCPoint(benchmark::State& state) {
    const BCData d;
    for (auto _ : state) benchmark::DoNotOptimize(bc_point(d, 0.7, 0.4));
}
BENCHMARK(BM_BCPoint);

void BM_LeafOfPoint(benchmark::State& state) {
    double x = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(leaf_of_point(x, 0.5, 2.0));
        x += 1e-7;
    }
}
BENCHMARK(BM_LeafOfPoint);

}  // namespace
BENCHMARK_MAIN();

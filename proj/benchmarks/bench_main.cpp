#include <benchmark/benchmark.h>

#include "hfk/local_equiv.hpp"
#include "hfk/splitting.hpp"
#include "hfk/surgery_algebra.hpp"

using namespace hfk;

namespace {

void bm_tensor_square(benchmark::State& state) {
    auto c = staircase_torus(static_cast<int>(state.range(0))).complex;
    for (auto _ : state)
        benchmark::DoNotOptimize(BigradedComplex::tensor(c, c));
}
BENCHMARK(bm_tensor_square)->Arg(3)->Arg(6);

void bm_build_cone(benchmark::State& state) {
    auto k = staircase_torus(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(MappingCone(k, 1, FlipKind::StrongInversion));
}
BENCHMARK(bm_build_cone)->Arg(1)->Arg(3);

void bm_cone_towers(benchmark::State& state) {
    auto k = staircase_torus(static_cast<int>(state.range(0)));
    MappingCone x(k, 2, FlipKind::StrongInversion);
    for (auto _ : state)
        benchmark::DoNotOptimize(spinc_towers(x, 0));
}
BENCHMARK(bm_cone_towers)->Arg(1)->Arg(3);

void bm_swap_square_homotopy(benchmark::State& state) {
    auto sw = swap_involution(staircase_torus(static_cast<int>(state.range(0))));
    const ChainMap& phi = sw.map("phi");
    ChainMap sq = compose(phi, phi);
    ChainMap id = ChainMap::identity(sw.complex);
    for (auto _ : state)
        benchmark::DoNotOptimize(homotopy_between(sq, id));
}
BENCHMARK(bm_swap_square_homotopy)->Arg(1)->Arg(3);

void bm_find_local_map(benchmark::State& state) {
    auto k = figure_eight();
    PhiComplex wedge = vv_wedge(k, 0, Rational(0));
    PhiComplex triv = trivial_phi_complex();
    for (auto _ : state)
        benchmark::DoNotOptimize(find_local_map(triv, wedge, LocalMode::Strict));
}
BENCHMARK(bm_find_local_map);

void bm_match_standard(benchmark::State& state) {
    auto a0 = alexander_slice(box(3).complex, 0);
    UMap phibar = slice_map(box(3).map("phi"), a0, 0, a0);
    AlmostPhiComplex a{a0, phibar, Rational(0)};
    for (auto _ : state)
        benchmark::DoNotOptimize(match_standard(a, 8));
}
BENCHMARK(bm_match_standard);

void bm_swap_splitting(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(swap_splitting(3));
}
BENCHMARK(bm_swap_splitting);

} // namespace

BENCHMARK_MAIN();

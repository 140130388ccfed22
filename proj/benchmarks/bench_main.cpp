// Timing probes for the expensive exact-arithmetic paths: root enumeration,
// reflection closures, finite group closures, normal forms and one full
// pipeline run.

#include <benchmark/benchmark.h>

#include "k3g2/lattice.hpp"
#include "k3g2/matrix.hpp"
#include "k3g2/pipeline.hpp"
#include "k3g2/root_system.hpp"
#include "k3g2/su2.hpp"

namespace {

using namespace k3g2;

void bench_root_enumeration(benchmark::State& state) {
    auto l = make_minus_e8();
    std::vector<RatVec> span;
    for (int i = 0; i < 8; ++i) {
        RatVec e(8, Rational(0));
        e[static_cast<size_t>(i)] = 1;
        span.push_back(e);
    }
    for (auto _ : state) {
        auto sub = NegativeDefiniteSublattice::from_span(l, span);
        auto roots = enumerate_roots(sub);
        benchmark::DoNotOptimize(roots.size());
    }
}
BENCHMARK(bench_root_enumeration);

void bench_reflection_closure(benchmark::State& state) {
    auto l = make_minus_e8();
    std::vector<LatticeVector> seeds;
    for (int i = 0; i < 8; ++i) {
        IntVec e(8, Integer(0));
        e[static_cast<size_t>(i)] = 1;
        seeds.push_back(lattice_vector(l, e));
    }
    for (auto _ : state) {
        auto closure = reflection_closure(l, seeds);
        benchmark::DoNotOptimize(closure.size());
    }
}
BENCHMARK(bench_reflection_closure);

void bench_simple_root_extraction(benchmark::State& state) {
    auto l = make_minus_e8();
    std::vector<LatticeVector> seeds;
    for (int i = 0; i < 8; ++i) {
        IntVec e(8, Integer(0));
        e[static_cast<size_t>(i)] = 1;
        seeds.push_back(lattice_vector(l, e));
    }
    auto roots = reflection_closure(l, seeds);
    for (auto _ : state) {
        auto sys = analyze_root_set(l, roots);
        benchmark::DoNotOptimize(sys.components.size());
    }
}
BENCHMARK(bench_simple_root_extraction);

void bench_largest_fiber_group_closure(benchmark::State& state) {
    auto gens = binary_icosahedral_generators();
    for (auto _ : state) {
        auto cl = close_group(gens, 200);
        benchmark::DoNotOptimize(cl.elements.size());
    }
}
BENCHMARK(bench_largest_fiber_group_closure);

void bench_smith_normal_form(benchmark::State& state) {
    auto l = make_k3_lattice();
    const IntMatrix& g = l->gram();
    for (auto _ : state) {
        auto s = smith_normal_form(g);
        benchmark::DoNotOptimize(s.d.at(21, 21));
    }
}
BENCHMARK(bench_smith_normal_form);

void bench_diagram_fold(benchmark::State& state) {
    // A five node chain folded by its reversal.
    IntMatrix g(5, 5);
    for (int i = 0; i < 5; ++i) g.at(i, i) = -2;
    for (int i = 0; i + 1 < 5; ++i) {
        g.at(i, i + 1) = 1;
        g.at(i + 1, i) = 1;
    }
    auto l = make_lattice(g, "A5");
    std::vector<LatticeVector> seeds;
    for (int i = 0; i < 5; ++i) {
        IntVec e(5, Integer(0));
        e[static_cast<size_t>(i)] = 1;
        seeds.push_back(lattice_vector(l, e));
    }
    auto sys = analyze_root_set(l, reflection_closure(l, seeds));
    std::vector<int> sigma = a_type_flip(sys, sys.components[0]);
    for (auto _ : state) {
        auto label = fold_by_automorphism(sys, sys.components[0], sigma);
        benchmark::DoNotOptimize(label.size());
    }
}
BENCHMARK(bench_diagram_fold);

void bench_full_pipeline_untouched(benchmark::State& state) {
    OrbifoldSpec spec;
    spec.kind = 1;
    for (auto _ : state) {
        auto rep = run_pipeline(spec);
        benchmark::DoNotOptimize(rep.valid);
    }
}
BENCHMARK(bench_full_pipeline_untouched)->Unit(benchmark::kMillisecond)->Iterations(3);

void bench_perturbed_pipeline(benchmark::State& state) {
    OrbifoldSpec spec;
    spec.kind = 2;
    spec.keep1 = std::set<int>{1, 3};
    spec.keep2 = std::set<int>{};
    for (auto _ : state) {
        auto rep = run_pipeline(spec);
        benchmark::DoNotOptimize(rep.valid);
    }
}
BENCHMARK(bench_perturbed_pipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

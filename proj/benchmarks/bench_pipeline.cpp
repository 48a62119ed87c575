#include <benchmark/benchmark.h>

#include "zxstar/catalog.hpp"
#include "zxstar/circuits.hpp"
#include "zxstar/rewrite.hpp"
#include "zxstar/strategy.hpp"

using namespace zxstar;

namespace {

Circuit bench_circuit(int qubits, int mcts, std::uint64_t seed) {
    return random_mct_dense(qubits, 8, 0, mcts, seed);
}

void BM_master_weighting(benchmark::State& state) {
    Diagram d = to_diagram_closed(bench_circuit(10, static_cast<int>(state.range(0)), 7));
    push_nots_to_boundary(d);
    to_stack_form(d);
    partial_simplify(d);
    for (auto _ : state) {
        Term t{ExactScalar::one(), d};
        benchmark::DoNotOptimize(select_master(t));
    }
}
BENCHMARK(BM_master_weighting)->Arg(2)->Arg(4)->Arg(6);

void BM_term_expansion(benchmark::State& state) {
    Diagram d = to_diagram_closed(bench_circuit(10, static_cast<int>(state.range(0)), 7));
    for (auto _ : state) {
        Diagram copy = d;
        benchmark::DoNotOptimize(decompose_weighted(copy).terms.size());
    }
}
BENCHMARK(BM_term_expansion)->Arg(2)->Arg(4)->Arg(6);

void BM_partial_simplify(benchmark::State& state) {
    Diagram d = to_diagram_closed(bench_circuit(12, 4, 11));
    for (auto _ : state) {
        Diagram copy = d;
        partial_simplify(copy);
        benchmark::DoNotOptimize(copy.vertices().size());
    }
}
BENCHMARK(BM_partial_simplify);

void BM_mct_oracle_contraction(benchmark::State& state) {
    Circuit c;
    c.qubits = static_cast<int>(state.range(0));
    MctGate m;
    for (int q = 0; q < c.qubits - 1; ++q)
        m.controls.push_back(q);
    m.target = c.qubits - 1;
    c.gates.push_back(m);
    Diagram d = to_diagram(c);
    for (auto _ : state)
        benchmark::DoNotOptimize(contract(d).data.size());
}
BENCHMARK(BM_mct_oracle_contraction)->Arg(3)->Arg(5)->Arg(7);

} // namespace

BENCHMARK_MAIN();

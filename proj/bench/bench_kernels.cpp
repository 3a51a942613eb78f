// Serial reference against the OpenMP kernels on powers of the adding
// machine and of a reversible three-state machine.

#include <benchmark/benchmark.h>

#include "mealy/automaton.hpp"
#include "mealy/kernels.hpp"

namespace {

mealy::MealyMachine adding_machine() {
  mealy::MealyMachine m(mealy::Automaton({"x", "y"}, {"0", "1"}));
  m.set_transition(0, 0, 1, 1);
  m.set_transition(0, 1, 0, 0);
  m.set_transition(1, 0, 1, 0);
  m.set_transition(1, 1, 1, 1);
  return m;
}

mealy::MealyMachine cyclic_machine() {
  mealy::MealyMachine m(mealy::Automaton({"p", "q", "r"}, {"0", "1"}));
  m.set_transition(0, 0, 1, 1);
  m.set_transition(0, 1, 2, 0);
  m.set_transition(1, 0, 2, 0);
  m.set_transition(1, 1, 0, 1);
  m.set_transition(2, 0, 0, 0);
  m.set_transition(2, 1, 1, 1);
  return m;
}

template <class Fn>
void table(benchmark::State& state, const mealy::MealyMachine& m, Fn fn) {
  auto const n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fn(m, n));
  }
  state.SetItemsProcessed(state.iterations()
                          * static_cast<std::int64_t>(
                              mealy::kernels::count_words(m.num_states(), n,
                                                          ~std::uint64_t{0})));
}


void BM_PowerTableSerial(benchmark::State& s) {
  table(s, adding_machine(), mealy::kernels::serial::power_table);
}
void BM_PowerTableParallel(benchmark::State& s) {
  table(s, adding_machine(), mealy::kernels::parallel::power_table);
}
void BM_PowerTableSerial3(benchmark::State& s) {
  table(s, cyclic_machine(), mealy::kernels::serial::power_table);
}
void BM_PowerTableParallel3(benchmark::State& s) {
  table(s, cyclic_machine(), mealy::kernels::parallel::power_table);
}
void BM_ComponentsSerial(benchmark::State& s) {
  table(s, cyclic_machine(), mealy::kernels::serial::component_labels);
}
void BM_ComponentsParallel(benchmark::State& s) {
  table(s, cyclic_machine(), mealy::kernels::parallel::component_labels);
}

}  // namespace

BENCHMARK(BM_PowerTableSerial)->DenseRange(12, 20, 4);
BENCHMARK(BM_PowerTableParallel)->DenseRange(12, 20, 4);
BENCHMARK(BM_PowerTableSerial3)->DenseRange(8, 12, 2);
BENCHMARK(BM_PowerTableParallel3)->DenseRange(8, 12, 2);
BENCHMARK(BM_ComponentsSerial)->DenseRange(8, 12, 2);
BENCHMARK(BM_ComponentsParallel)->DenseRange(8, 12, 2);

BENCHMARK_MAIN();

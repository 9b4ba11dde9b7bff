#include <benchmark/benchmark.h>

#include "qfunc/equations.hpp"
#include "qfunc/qops.hpp"
#include "qfunc/series_io.hpp"

namespace {

const qfunc::ContextPtr& context() {
  static const auto ctx = qfunc::make_context(qfunc::Rational(2, 3), 16);
  return ctx;
}

void BM_Mul(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const auto f = qfunc::random_series(context(), 1, {"a", "b", "c"}, degree, 9);
  const auto g = qfunc::random_series(context(), 2, {"a", "b", "c"}, degree, 9);
  for (auto _ : state) benchmark::DoNotOptimize(qfunc::mul(f, g));
}
BENCHMARK(BM_Mul)->DenseRange(2, 8, 2);

void BM_ExpOperator(benchmark::State& state) {
  const auto op = static_cast<qfunc::OperatorId>(state.range(0));
  const auto f = qfunc::random_series(context(), 3, {"a", "c"}, static_cast<int>(state.range(1)), 9);
  qfunc::OperatorRoles roles;
  roles.src = qfunc::is_cauchy(op) ? "c" : "a";
  for (auto _ : state) benchmark::DoNotOptimize(qfunc::apply_operator(op, f, roles));
  state.SetLabel(std::string(qfunc::to_string(op)));
}
BENCHMARK(BM_ExpOperator)
    ->ArgsProduct({{static_cast<long>(qfunc::OperatorId::T_bDq),
                    static_cast<long>(qfunc::OperatorId::E_btheta),
                    static_cast<long>(qfunc::OperatorId::Cauchy_Dq),
                    static_cast<long>(qfunc::OperatorId::Cauchy_theta)},
                   {6, 10}});

void BM_Verify(benchmark::State& state) {
  const auto eq = static_cast<qfunc::EquationId>(state.range(0));
  const auto g = qfunc::random_series(context(), 4, qfunc::boundary_vars(eq), 6, 9);
  for (auto _ : state) benchmark::DoNotOptimize(qfunc::verify(eq, g));
  state.SetLabel(std::string(qfunc::to_string(eq)));
}
BENCHMARK(BM_Verify)->DenseRange(0, 5);

void BM_JsonRoundTrip(benchmark::State& state) {
  const auto f = qfunc::random_series(context(), 5, {"a", "b", "c"}, 8, 9);
  for (auto _ : state) benchmark::DoNotOptimize(qfunc::from_json(qfunc::to_json(f), 16));
}
BENCHMARK(BM_JsonRoundTrip);

}  // namespace

BENCHMARK_MAIN();

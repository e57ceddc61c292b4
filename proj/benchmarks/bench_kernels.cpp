#include <benchmark/benchmark.h>

#include "hitchin/dynamics.hpp"
#include "hitchin/lax.hpp"
#include "hitchin/phase_space.hpp"
#include "hitchin/schottky.hpp"
#include "hitchin/special_functions.hpp"

namespace {

const hitchin::ModularParameter& tau_i() {
  static const hitchin::ModularParameter m{hitchin::Complex(0.0, 1.0)};
  return m;
}

void BM_theta1(benchmark::State& state) {
  const hitchin::Complex z(0.37, 0.21);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hitchin::theta1(z, tau_i()));
  }
}
BENCHMARK(BM_theta1);

void BM_theta1_derivs(benchmark::State& state) {
  const hitchin::Complex z(0.37, 0.21);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hitchin::theta1_derivs(z, tau_i(), 3));
  }
}
BENCHMARK(BM_theta1_derivs);

void BM_wp(benchmark::State& state) {
  const hitchin::Complex z(0.2, 0.35);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hitchin::wp(z, tau_i()));
  }
}
BENCHMARK(BM_wp);

void BM_lax_matrix_N4(benchmark::State& state) {
  const auto x = hitchin::random_phase_point(4, hitchin::SpinKind::random, 7,
                                             &tau_i());
  const hitchin::Complex zeta(0.23, 0.41);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hitchin::lax_matrix(x, zeta, tau_i()));
  }
}
BENCHMARK(BM_lax_matrix_N4);

void BM_fourier_K64_N3(benchmark::State& state) {
  const auto x = hitchin::random_phase_point(3, hitchin::SpinKind::random, 11,
                                             &tau_i());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        hitchin::solve_moment_fourier(x.u, x.w, x.p, 64, tau_i()));
  }
}
BENCHMARK(BM_fourier_K64_N3);

void BM_rk4_step_N3(benchmark::State& state) {
  const auto x = hitchin::random_phase_point(3, hitchin::SpinKind::random, 3,
                                             &tau_i());
  hitchin::FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.steps = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hitchin::integrate(x, cfg, tau_i()));
  }
}
BENCHMARK(BM_rk4_step_N3);

void BM_dimension_N3_g3(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hitchin::moduli_dimension_numeric(3, 3, 3, 1));
  }
}
BENCHMARK(BM_dimension_N3_g3);

}  // namespace

BENCHMARK_MAIN();

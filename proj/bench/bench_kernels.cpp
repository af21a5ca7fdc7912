// Serial reference loops against the OpenMP loops for the two stencil kernels.

#include "expball/kernels.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace expball;

namespace {

void BM_EulerResidual(benchmark::State& st, Backend b)
{
    const GasModel g(1.2);
    const auto n = static_cast<std::size_t>(st.range(0));
    std::vector<double> rho(n), v(n), dm(n), dq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;
        rho[i] = 1.0 + 0.01 * std::sin(6.0 * x);
        v[i] = 0.01 * std::cos(5.0 * x);
    }
    kernels::EulerWorkspace ws;
    kernels::EulerResidualArgs a{&g, Scheme::muscl_minmod, 2.0, 0.1, rho, v};
    for (auto _ : st) {
        kernels::euler_residual(b, a, ws, dm, dq);
        benchmark::DoNotOptimize(dm.data());
        benchmark::DoNotOptimize(dq.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

void BM_PotentialRhs(benchmark::State& st, Backend b)
{
    const GasModel g(1.2);
    const auto nodes = static_cast<std::size_t>(st.range(0)) + 1;
    std::vector<double> phi(nodes + 2), psi(nodes + 2), d1(nodes), d2(nodes);
    for (std::size_t j = 0; j < nodes + 2; ++j) {
        const double x = (static_cast<double>(j) - 1.0) / (nodes - 1);
        phi[j] = 0.05 * x * x + 0.001 * std::cos(4.0 * x);
        psi[j] = -0.005 * x * x;
    }
    kernels::PotentialRhsArgs a{&g, 1.0, 1.1, 0.1, phi, psi};
    for (auto _ : st) {
        kernels::potential_rhs(b, a, d1, d2);
        benchmark::DoNotOptimize(d1.data());
        benchmark::DoNotOptimize(d2.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(nodes));
}

} // namespace

BENCHMARK_CAPTURE(BM_EulerResidual, serial, Backend::serial)->RangeMultiplier(8)->Range(256, 1 << 18);
BENCHMARK_CAPTURE(BM_EulerResidual, openmp, Backend::openmp)->RangeMultiplier(8)->Range(256, 1 << 18);
BENCHMARK_CAPTURE(BM_PotentialRhs, serial, Backend::serial)->RangeMultiplier(8)->Range(256, 1 << 18);
BENCHMARK_CAPTURE(BM_PotentialRhs, openmp, Backend::openmp)->RangeMultiplier(8)->Range(256, 1 << 18);

BENCHMARK_MAIN();

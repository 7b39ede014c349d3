#include <benchmark/benchmark.h>

#include <vector>

#include "graphs.hpp"
#include "magneto/gauge.hpp"
#include "magneto/isoperimetry.hpp"
#include "magneto/spectral.hpp"

using namespace magneto;
using namespace magneto::testing;

namespace {

// Full-vertex-set exact frustration on a random unbalanced graph; the argument
// is the vertex count and the group order is fixed at 4.
void BM_FrustrationExact(benchmark::State& state) {
  Rng rng(7);
  RandomGraphOptions opts;
  opts.min_vertices = opts.max_vertices = static_cast<int>(state.range(0));
  const MagneticGraph g = random_unbalanced_graph(Group::cyclic(4), rng, opts);
  const VertexSet all = VertexSet::full(g.vertex_count());
  for (auto _ : state) benchmark::DoNotOptimize(frustration_exact(g, all).value);
}
BENCHMARK(BM_FrustrationExact)->DenseRange(4, 10, 2);

void BM_CheegerProduct(benchmark::State& state) {
  const std::vector<MagneticGraph> factors{cycle_graph(3, 1, 2), cycle_graph(4, 1, 2)};
  const MagneticGraph g = cartesian_product(factors);
  IsoperimetryOptions opts;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cheeger_constant(g, opts).constant);
}
BENCHMARK(BM_CheegerProduct)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Eigendecomposition(benchmark::State& state) {
  Rng rng(11);
  RandomGraphOptions opts;
  opts.min_vertices = opts.max_vertices = static_cast<int>(state.range(0));
  const MagneticGraph g = random_graph(Group::circle(), rng, opts);
  for (auto _ : state) benchmark::DoNotOptimize(eigendecomposition(magnetic_laplacian(g)).eigenvalues[0]);
}
BENCHMARK(BM_Eigendecomposition)->RangeMultiplier(4)->Range(8, 128);

}  // namespace

BENCHMARK_MAIN();

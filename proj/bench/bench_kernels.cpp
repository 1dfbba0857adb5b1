// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "instsym/fields.hpp"
#include "instsym/liealg.hpp"
#include "instsym/registry.hpp"
#include "instsym/reps.hpp"
#include "instsym/symmetry.hpp"

using namespace instsym;

namespace {

const StandardData& iso() {
  static StandardData d = make_example("iso-ex");
  return d;
}

const std::vector<Quaternion>& iso_grid() {
  static std::vector<Quaternion> pts = pd_grid(Domain::full, 3.0, 0.2);
  return pts;
}

void BM_pd_grid(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(min_gram_eigenvalue(iso(), iso_grid()));
  st.SetItemsProcessed(st.iterations() * iso_grid().size());
}
void BM_pd_grid_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(min_gram_eigenvalue_serial(iso(), iso_grid()));
  st.SetItemsProcessed(st.iterations() * iso_grid().size());
}

std::vector<StandardData> batch_data() {
  return {make_example("basic"), make_example("iso-ex"), make_example("rot-ex"), make_example("not-in-ms"),
          make_example("not-in-ms")};
}
std::vector<SymmetryKind> batch_kinds() {
  return {{KindTag::full}, {KindTag::isoclinic_spherical}, {KindTag::rotational}, {KindTag::ms_circle},
          {KindTag::simple_spherical}};
}

void BM_solve_batch(benchmark::State& st) {
  auto d = batch_data();
  auto k = batch_kinds();
  for (auto _ : st) benchmark::DoNotOptimize(solve_batch(d, k));
}
void BM_solve_batch_serial(benchmark::State& st) {
  auto d = batch_data();
  auto k = batch_kinds();
  for (auto _ : st) benchmark::DoNotOptimize(solve_batch_serial(d, k));
}

std::vector<std::array<double, 3>> half_space(int n) {
  std::vector<std::array<double, 3>> pts;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) pts.push_back({-1 + 2.0 * a / n, -1 + 2.0 * b / n, 0.1 + 1.5 * (a + b) / (2.0 * n)});
  return pts;
}

void BM_hyperbolic_grid(benchmark::State& st) {
  ConvertedData cd = not_in_ms_converted(0.5);
  RMat rho(2, 2);
  rho << 0, 1, -1, 0;
  auto pts = half_space(16);
  for (auto _ : st) benchmark::DoNotOptimize(hyperbolic_grid(cd.data, rho, pts));
}
void BM_hyperbolic_grid_serial(benchmark::State& st) {
  ConvertedData cd = not_in_ms_converted(0.5);
  RMat rho(2, 2);
  rho << 0, 1, -1, 0;
  auto pts = half_space(16);
  for (auto _ : st) benchmark::DoNotOptimize(hyperbolic_grid_serial(cd.data, rho, pts));
}

std::vector<Quaternion> ball_points() {
  std::vector<Quaternion> xs;
  for (int q = 1; q <= 8; ++q) xs.push_back(Quaternion(0, 0.1 * q, 0.05 * q, -0.03 * q));
  return xs;
}

void BM_holonomy_batch(benchmark::State& st) {
  StandardData d = make_example("basic");
  auto xs = ball_points();
  for (auto _ : st) benchmark::DoNotOptimize(orbit_holonomy_batch(d, ms_generator(), xs, st.range(0)));
}
void BM_holonomy_batch_serial(benchmark::State& st) {
  StandardData d = make_example("basic");
  auto xs = ball_points();
  for (auto _ : st) benchmark::DoNotOptimize(orbit_holonomy_batch_serial(d, ms_generator(), xs, st.range(0)));
}

// dense nullspace vs weight-space restriction on V_n (x) V_n* (x) V_n
void BM_invariants_dense(benchmark::State& st) {
  Representation v = complex_irrep_sp1(st.range(0));
  TensorSpec s = tensor(v, false, v, true, v, false);
  for (auto _ : st) benchmark::DoNotOptimize(numeric_invariants_dense(s, false));
}
void BM_invariants_weight(benchmark::State& st) {
  Representation v = complex_irrep_sp1(st.range(0));
  TensorSpec s = tensor(v, false, v, true, v, false);
  for (auto _ : st) benchmark::DoNotOptimize(numeric_invariants_weight(s, false));
}

}  // namespace

BENCHMARK(BM_pd_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pd_grid_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_solve_batch)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_solve_batch_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hyperbolic_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hyperbolic_grid_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_holonomy_batch)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_holonomy_batch_serial)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_invariants_dense)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_invariants_weight)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

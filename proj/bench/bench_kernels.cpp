// Serial reference vs OpenMP kernels on torus grids.
//   ./bench_kernels --benchmark_filter=Curvature

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "ipack/kernels.hpp"
#include "ipack/standard_surfaces.hpp"

using namespace ipack;

namespace {

struct Mesh {
  WeightedSurface surface;
  RadiusVector r;
  UCoordinates u;
};

Mesh make_mesh(int side) {
  std::mt19937_64 rng(99);
  const Triangulation t = surfaces::torus_grid(side, side);
  std::uniform_real_distribution<double> inv(0.0, 1.0), logr(-1.0, 0.5);
  std::vector<double> in(t.edge_count());
  for (double& x : in) x = inv(rng);
  std::vector<double> r(t.vertex_count());
  for (double& x : r) x = std::exp(logr(rng));
  RadiusVector radii(r);
  return {WeightedSurface(t, Background::Euclidean, in), radii, to_u(Background::Euclidean, radii)};
}

const Mesh& mesh(int side) {
  static std::map<int, Mesh> cache;
  auto it = cache.find(side);
  if (it == cache.end()) it = cache.emplace(side, make_mesh(side)).first;
  return it->second;
}

template <auto Fn>
void curvature(benchmark::State& state) {
  const Mesh& m = mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(m.surface, m.r));
  state.SetItemsProcessed(state.iterations() * m.surface.triangulation().face_count());
}

template <auto Fn>
void hessian(benchmark::State& state) {
  const Mesh& m = mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(m.surface, m.u));
  state.SetItemsProcessed(state.iterations() * m.surface.triangulation().face_count());
}

template <auto Fn>
void energy(benchmark::State& state) {
  const Mesh& m = mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(m.surface, m.u));
  state.SetItemsProcessed(state.iterations() * m.surface.triangulation().face_count());
}

}  // namespace

BENCHMARK(curvature<kernels::serial::curvature>)->Name("Curvature/serial")->Arg(32)->Arg(128)->Arg(256);
BENCHMARK(curvature<kernels::parallel::curvature>)->Name("Curvature/parallel")->Arg(32)->Arg(128)->Arg(256)->UseRealTime();
BENCHMARK(hessian<kernels::serial::angle_hessian>)->Name("Hessian/serial")->Arg(32)->Arg(128);
BENCHMARK(hessian<kernels::parallel::angle_hessian>)->Name("Hessian/parallel")->Arg(32)->Arg(128)->UseRealTime();
BENCHMARK(energy<kernels::serial::total_energy>)->Name("Energy/serial")->Arg(16)->Arg(48);
BENCHMARK(energy<kernels::parallel::total_energy>)->Name("Energy/parallel")->Arg(16)->Arg(48)->UseRealTime();

BENCHMARK_MAIN();

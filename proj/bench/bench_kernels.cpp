// Serial reference kernels against their OpenMP counterparts on subdivided ellipsoids.

#include <benchmark/benchmark.h>

#include "minkflex/curvature.hpp"
#include "minkflex/mesh.hpp"
#include "minkflex/volume.hpp"

using namespace minkflex;

namespace {

Polyhedron ellipsoid(int level) { return make_geodesic_ellipsoid(level, 1.5, 1.2, 0.4); }

SampledPath scaled_path(int level, int samples) {
  const Polyhedron p = ellipsoid(level);
  SampledPath path{p.surface, {}};
  for (int i = 0; i < samples; ++i) {
    const double t = 0.01 * i;
    std::vector<Vec3M> c = p.coords;
    for (Vec3M& x : c) x = (1.0 + t) * x;
    path.samples.push_back({t, c});
  }
  return path;
}

void BM_VolumeSerial(benchmark::State& st) {
  const Polyhedron p = ellipsoid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(generalized_volume(p));
  st.counters["faces"] = static_cast<double>(p.surface.triangles().size());
}
void BM_VolumeParallel(benchmark::State& st) {
  const Polyhedron p = ellipsoid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(generalized_volume_parallel(p));
  st.counters["faces"] = static_cast<double>(p.surface.triangles().size());
}
void BM_CurvatureSerial(benchmark::State& st) {
  const Polyhedron p = ellipsoid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(total_mean_curvature(p).total);
}
void BM_CurvatureParallel(benchmark::State& st) {
  const Polyhedron p = ellipsoid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(total_mean_curvature_parallel(p).total);
}
void BM_PathSeriesSerial(benchmark::State& st) {
  const SampledPath path = scaled_path(static_cast<int>(st.range(0)), 64);
  for (auto _ : st) {
    benchmark::DoNotOptimize(volume_along_path(path).max_deviation);
    benchmark::DoNotOptimize(mean_curvature_along_path(path).max_deviation);
  }
}
void BM_PathSeriesParallel(benchmark::State& st) {
  const SampledPath path = scaled_path(static_cast<int>(st.range(0)), 64);
  for (auto _ : st) {
    benchmark::DoNotOptimize(volume_along_path_parallel(path).max_deviation);
    benchmark::DoNotOptimize(mean_curvature_along_path_parallel(path).max_deviation);
  }
}

}  // namespace

BENCHMARK(BM_VolumeSerial)->DenseRange(3, 6);
BENCHMARK(BM_VolumeParallel)->DenseRange(3, 6);
BENCHMARK(BM_CurvatureSerial)->DenseRange(3, 6);
BENCHMARK(BM_CurvatureParallel)->DenseRange(3, 6);
BENCHMARK(BM_PathSeriesSerial)->DenseRange(2, 4);
BENCHMARK(BM_PathSeriesParallel)->DenseRange(2, 4);

BENCHMARK_MAIN();

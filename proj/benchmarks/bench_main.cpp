#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "schottky/hyp2.hpp"
#include "schottky/mcg.hpp"
#include "schottky/oracle.hpp"
#include "schottky/pingpong.hpp"
#include "schottky/projection.hpp"
#include "schottky/torus.hpp"

using namespace schottky;

namespace {

const mcg::MappingClass phi(2, 1, 1, 1);
const mcg::MappingClass psi(1, 1, 1, 2);

std::vector<hyp2::Point> random_points(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> x(-3, 3), y(0.2, 4);
  std::vector<hyp2::Point> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(hyp2::make_point(x(rng), y(rng)));
  return out;
}

}  // namespace

static void BM_Dist(benchmark::State& state) {
  const auto pts = random_points(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyp2::dist(pts[i & 1023], pts[(i + 1) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_Dist);

static void BM_Project(benchmark::State& state) {
  const auto pts = random_points(1024);
  const hyp2::Geodesic c = mcg::axis(phi).axis;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(hyp2::project(c, pts[i++ & 1023]));
}
BENCHMARK(BM_Project);

static void BM_PairGeometry(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(projection::pair_geometry(phi, psi));
}
BENCHMARK(BM_PairGeometry);

static void BM_Kerckhoff(benchmark::State& state) {
  const auto a = hyp2::make_point(0.3, 0.9), b = hyp2::make_point(-1.1, 2.2);
  for (auto _ : state) benchmark::DoNotOptimize(torus::kerckhoff_dist(a, b, state.range(0)));
}
BENCHMARK(BM_Kerckhoff)->Arg(50)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_ShortCurves(benchmark::State& state) {
  const auto tau = hyp2::make_point(0.5, 0.8660254037844386);
  for (auto _ : state) {
    benchmark::DoNotOptimize(torus::short_curves(tau, static_cast<double>(state.range(0))));
  }
}
BENCHMARK(BM_ShortCurves)->Arg(10)->Arg(100);

static void BM_FreeCheck(benchmark::State& state) {
  const auto k = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::free_check({phi, psi}, 12, k));
}
BENCHMARK(BM_FreeCheck)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

static void BM_Certify(benchmark::State& state) {
  pingpong::CertificateOptions o;
  o.samples = static_cast<std::size_t>(state.range(0));
  const double b = projection::model_constants().b;
  for (auto _ : state) benchmark::DoNotOptimize(pingpong::certify({phi, psi}, b, o));
}
BENCHMARK(BM_Certify)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

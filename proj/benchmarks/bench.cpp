#include <complex>

#include <benchmark/benchmark.h>

#include <bergman/asymptotics.hpp>
#include <bergman/extremal.hpp>
#include <bergman/geometry.hpp>
#include <bergman/kernel_jet.hpp>

namespace {

using bergman::FlatProfile;
using bergman::geometry::ConeStream;
using bergman::geometry::ModelDomain;
using Complex = std::complex<double>;

ModelDomain harness_domain() {
  ModelDomain d;
  d.n = 1;
  d.profile = FlatProfile(1);
  d.delta0 = 4.0;
  return d;
}

void BM_KernelJet(benchmark::State& state) {
  const auto dom = bergman::kernel::ReinhardtDomain::parse("prod:disc,ball:2");
  Eigen::VectorXcd z(3);
  z << Complex(0.3, 0.1), Complex(0.2, -0.15), Complex(-0.1, 0.25);
  bergman::kernel::JetOptions opt;
  opt.truncation = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bergman::kernel::kernel_jet(dom, z, opt));
  }
}
BENCHMARK(BM_KernelJet)->Arg(30)->Arg(60);

void BM_KernelValueOnly(benchmark::State& state) {
  const auto dom = bergman::kernel::ReinhardtDomain::parse("prod:disc,ball:2");
  Eigen::VectorXcd z(3);
  z << Complex(0.3, 0.1), Complex(0.2, -0.15), Complex(-0.1, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bergman::kernel::kernel_value(dom, z, 60));
  }
}
BENCHMARK(BM_KernelValueOnly);

void BM_MakeFrame(benchmark::State& state) {
  const auto dom = harness_domain();
  const auto stream = ConeStream::parse(
      R"({"kind":"tilted","alpha":1.0,"N":4,"a":1.0,"c":1.0,"Nprime":6,"u":[1.0]})", 1);
  const double log_t = -static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bergman::geometry::make_frame(dom, stream, log_t));
  }
}
BENCHMARK(BM_MakeFrame)->Arg(100)->Arg(2000);

void BM_SandwichCheck(benchmark::State& state) {
  const auto dom = harness_domain();
  const auto frame = bergman::geometry::make_frame(dom, ConeStream{}, -500.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bergman::geometry::sandwich_check(frame, 0.5, 0.1, static_cast<int>(state.range(0)), 7));
  }
}
BENCHMARK(BM_SandwichCheck)->Arg(200)->Arg(1000);

void BM_Extremal(benchmark::State& state) {
  const auto dom = bergman::kernel::ReinhardtDomain::parse("prod:disc,egg:2");
  Eigen::VectorXcd z(3), xi(3);
  z << Complex(0.3, 0.1), Complex(0.2, -0.1), Complex(-0.1, 0.2);
  xi << Complex(1.0, 0.5), Complex(-0.3, 0.2), Complex(0.4, 0.0);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bergman::kernel::extremal(dom, z, xi, order, 40));
  }
}
BENCHMARK(BM_Extremal)->Arg(0)->Arg(2);

void BM_KernelRatioPoint(benchmark::State& state) {
  const auto dom = harness_domain();
  bergman::geometry::TGrid grid;
  grid.log_t_start = grid.log_t_end = -500.0;
  grid.points = 1;
  bergman::asymptotics::RatioOptions opt;
  opt.certify_samples = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bergman::asymptotics::kernel_ratio_bounds(dom, ConeStream{}, 0.5, 0.1, grid, opt));
  }
}
BENCHMARK(BM_KernelRatioPoint);

}  // namespace

BENCHMARK_MAIN();

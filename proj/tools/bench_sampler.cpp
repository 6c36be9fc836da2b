#include "stablerep/shotnoise.hpp"
#include "stablerep/stat_verify.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <numbers>

using namespace stablerep;

namespace {

template <typename Fn>
double seconds(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec unit(double x) { return Vec::Constant(1, x); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP timings for the sampler and the empirical CF"};
  std::size_t n = 20000;
  std::size_t terms = 20000;
  int reps = 3;
  app.add_option("--n", n, "Samples per batch")->capture_default_str();
  app.add_option("--max-terms", terms, "Series terms for the Cauchy case")->capture_default_str();
  app.add_option("--reps", reps, "Repetitions (best time is reported)")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const ShotNoiseSpec half{0.5, 1.0, {{unit(1.0), 1.0}}, {kDefaultMaxTerms, 1e-4}, 1};
  const ShotNoiseSpec cauchy{1.0, 2.0 / std::numbers::pi, {{unit(1.0), 0.5}, {unit(-1.0), 0.5}}, {terms, 1e-4}, 2};

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-24s %12s %12s %8s\n", "kernel", "serial [s]", "parallel [s]", "speedup");

  auto row = [&](const char* name, auto serial, auto parallel) {
    double ts = 1e300, tp = 1e300;
    for (int r = 0; r < reps; ++r) {
      ts = std::min(ts, seconds(serial));
      tp = std::min(tp, seconds(parallel));
    }
    std::printf("%-24s %12.4f %12.4f %8.2f\n", name, ts, tp, ts / tp);
  };

  row("series alpha=0.5", [&] { sample_series_serial(half, n); }, [&] { sample_series(half, n); });
  row("series alpha=1", [&] { sample_series_serial(cauchy, n / 10); }, [&] { sample_series(cauchy, n / 10); });

  const SampleBatch batch = sample_series(half, n);
  const Grid grid = default_grid(2, 61);
  SampleBatch planar;
  planar.dim = 2;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    planar.samples.push_back(batch.samples[i]);
    planar.samples.push_back(-batch.samples[i]);
  }
  planar.terms_used = batch.terms_used;
  planar.tail_diagnostic = batch.tail_diagnostic;
  row("ecf 61x61 grid", [&] { ecf_serial(planar, grid); }, [&] { ecf(planar, grid); });
  return 0;
}

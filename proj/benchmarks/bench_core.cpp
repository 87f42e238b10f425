#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "qframe/classifier.hpp"
#include "qframe/contextuality.hpp"
#include "qframe/experiments.hpp"
#include "qframe/json_io.hpp"
#include "qframe/quantum.hpp"
#include "qframe/rng.hpp"
#include "support/builders.hpp"

using namespace qframe;
namespace qc = qframe::classifier;
namespace qq = qframe::quantum;
namespace ctx = qframe::contextuality;

namespace {

qq::PureState random_state(int n_qubits, std::uint64_t seed) {
  qq::PureState s;
  for (int i = 1; i <= n_qubits; ++i)
    s.layout.labels.push_back(std::to_string(i));
  s.layout.dims.assign(n_qubits, 2);
  SplitMix64 rng(seed);
  s.amplitudes = qq::Vector(1 << n_qubits);
  for (int i = 0; i < (1 << n_qubits); ++i)
    s.amplitudes(i) = qq::Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  s.amplitudes.normalize();
  return s;
}

// Entanglement entropy maximized over all bipartitions: the dominant cost
// is 2^(n-1) - 1 singular value decompositions.
void bm_entanglement_entropy(benchmark::State& state) {
  auto s = random_state(static_cast<int>(state.range(0)), 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(qq::entanglement_entropy(s));
}
BENCHMARK(bm_entanglement_entropy)->DenseRange(4, 8)->Unit(benchmark::kMillisecond);

ctx::EmpiricalModel tsirelson_model() {
  experiments::BellSetup setup;
  setup.a1_angles = {0.0, M_PI / 2};
  setup.a2_angles = {M_PI / 4, -M_PI / 4};
  return experiments::run_bell(setup).model;
}

// Feasibility LP over deterministic assignments (16 columns for CHSH).
void bm_global_section(benchmark::State& state) {
  auto m = tsirelson_model();
  for (auto _ : state) benchmark::DoNotOptimize(ctx::has_global_section(m));
}
BENCHMARK(bm_global_section)->Unit(benchmark::kMicrosecond);

// Contextual fraction: one more LP, maximizing the noncontextual weight.
void bm_contextual_fraction(benchmark::State& state) {
  auto m = tsirelson_model();
  for (auto _ : state) benchmark::DoNotOptimize(ctx::contextual_fraction(m));
}
BENCHMARK(bm_contextual_fraction)->Unit(benchmark::kMicrosecond);

// Colimit of a chain of random classifications plus the cocone arrows.
void bm_colimit(benchmark::State& state) {
  SplitMix64 rng(7);
  qc::ClassifierDiagram d;
  const int n = static_cast<int>(state.range(0));
  d.nodes.push_back(testsupport::random_classification(rng, "N0"));
  for (int i = 1; i < n; ++i) {
    auto [next, arrow] = testsupport::random_valid_extension(
        rng, d.nodes.back(), "N" + std::to_string(i));
    d.nodes.push_back(next);
    arrow.source_id = d.nodes[i - 1].id;
    arrow.target_id = d.nodes[i].id;
    d.edges.push_back({"e" + std::to_string(i), i - 1, i, arrow});
  }
  d.validate_edges();
  for (auto _ : state) benchmark::DoNotOptimize(qc::colimit(d));
}
BENCHMARK(bm_colimit)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

// Sequential two-QRF statistics: builds the joint empirical model from a
// Bell pair measured by misaligned frames.
void bm_model_from_qrfs(benchmark::State& state) {
  auto j = io::load_json_file(std::string(QFRAME_FIXTURE_DIR) +
                              "/cli/model_from_qrfs_tsirelson.json");
  auto s = io::parse_pure_state(j["state"]);
  auto q1 = io::parse_qrf(j["q1"]);
  auto q2 = io::parse_qrf(j["q2"]);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ctx::empirical_model_from_qrfs(s, q1, q2, qq::MeasureMode::joint));
}
BENCHMARK(bm_model_from_qrfs)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

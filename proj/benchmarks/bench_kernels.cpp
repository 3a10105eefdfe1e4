#include <benchmark/benchmark.h>

#include <random>

#include "hdqi/anticomm.hpp"
#include "hdqi/decoder.hpp"
#include "hdqi/dequant.hpp"
#include "hdqi/ensembles.hpp"
#include "hdqi/stabilizer.hpp"

using namespace hdqi;

namespace {

PauliWord random_word(std::size_t n, std::mt19937_64& rng) {
  PauliWord w(n);
  static const char letters[4] = {'I', 'X', 'Y', 'Z'};
  for (std::size_t q = 0; q < n; ++q) w.set_letter(q, letters[rng() & 3]);
  return w;
}

}  // namespace

static void PauliMul(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::size_t n = std::size_t(state.range(0));
  PauliWord a = random_word(n, rng), b = random_word(n, rng);
  for (auto _ : state) {
    auto r = mul(a, b);
    benchmark::DoNotOptimize(r);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(PauliMul)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

static void Syndrome(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0));
  SparseSpinGlass g = spin_glass_sparse(n, 3, 4, 0.1, 3);
  SymplecticCode code = build_code(g.to_hamiltonian());
  std::mt19937_64 rng(5);
  BitVec y(code.m);
  for (std::size_t i = 0; i < code.m / 20 + 1; ++i) y.set(rng() % code.m, true);
  for (auto _ : state) {
    BitVec s = code.syndrome(y);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(Syndrome)->Arg(300)->Arg(1500)->Arg(7500);

static void BpDecodeSingleFlip(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0));
  PauliHamiltonian h = greedy_commuting(n, 3, 3 * n, 11, 200000000);
  SymplecticCode code = build_code(h);
  BpDecoder dec(code, BpParams{});
  std::mt19937_64 rng(7);
  for (auto _ : state) {
    BitVec e(code.m);
    e.set(rng() % code.m, true);
    auto r = dec.decode_with_prior(code.syndrome(e), 1.0 / double(code.m));
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BpDecodeSingleFlip)->Arg(300)->Arg(1000)->Unit(benchmark::kMicrosecond);

static void BpDecodeNearThreshold(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0));
  PauliHamiltonian h = greedy_commuting(n, 3, 3 * n, 13, 200000000);
  SymplecticCode code = build_code(h);
  BpDecoder dec(code, BpParams{});
  std::mt19937_64 rng(9);
  std::size_t flips = std::size_t(0.035 * double(code.m));
  for (auto _ : state) {
    BitVec e(code.m);
    std::size_t placed = 0;
    while (placed < flips) {
      std::size_t i = rng() % code.m;
      if (!e.get(i)) {
        e.set(i, true);
        ++placed;
      }
    }
    auto r = dec.decode_with_prior(code.syndrome(e), 0.035);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BpDecodeNearThreshold)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

static void AlphaDp(benchmark::State& state) {
  std::size_t m = std::size_t(state.range(0));
  std::mt19937_64 rng(3);
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t j = i + 1; j < m; ++j)
      if (rng() % 3 == 0) edges.emplace_back(i, j);
  AnticommGraph g = AnticommGraph::from_adjacency(m, edges);
  CountVector mu(m, 1);
  for (auto _ : state) {
    Rational a = alpha_dp(g, mu);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(AlphaDp)->DenseRange(8, 16, 4)->Unit(benchmark::kMicrosecond);

static void CosetTableBuild(benchmark::State& state) {
  std::size_t m = std::size_t(state.range(0));
  std::mt19937_64 rng(5);
  std::vector<uint32_t> cols(m);
  for (auto& c : cols) c = uint32_t(rng() % 4);
  for (auto _ : state) {
    CosetTable t(cols, 2, m);
    benchmark::DoNotOptimize(t.count(m / 2, 0));
  }
}
BENCHMARK(CosetTableBuild)->Arg(18)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

static void CliffordSaSweep(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0));
  PauliHamiltonian h = spin_glass_sparse(n, 3, 4, 0.5, 17).to_hamiltonian();
  for (auto _ : state) {
    SaResult r = clifford_sa(h, n, SaSchedule{2.0, 0.01, 1}, 3);
    benchmark::DoNotOptimize(r.best_energy);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n));
}
BENCHMARK(CliffordSaSweep)->Arg(300)->Arg(3000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

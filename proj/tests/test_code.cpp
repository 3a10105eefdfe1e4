#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <random>
#include <sstream>

#include "hdqi/code.hpp"
#include "hdqi/ensembles.hpp"
#include "test_util.hpp"

using namespace hdqi;

TEST_CASE("build_code dimensions of the reference models") {
  CHECK(build_code(ising_ring(3)).dimension == 1);
  CHECK(build_code(ising_ring(5)).dimension == 1);
  CHECK(build_code(toric_code(2)).dimension == 2);
  CHECK(build_code(toric_code(3)).dimension == 2);
  CHECK(build_code(cluster_ring(5)).dimension == 0);
  CHECK(build_code(cluster_ring(8)).dimension == 0);
}

TEST_CASE("toric code shape") {
  PauliHamiltonian h = toric_code(3);
  CHECK(h.n == 18);
  CHECK(h.m() == 18);
  CHECK(h.is_commuting());
  for (const auto& t : h.terms) CHECK(t.word.weight() == 4);
}

TEST_CASE("syndrome is linear and matches columns") {
  PauliHamiltonian h = ising_ring(4);
  SymplecticCode code = build_code(h);
  BitVec zero(code.m);
  CHECK(code.syndrome(zero).is_zero());
  for (std::size_t i = 0; i < code.m; ++i) {
    BitVec e(code.m);
    e.set(i, true);
    CHECK(code.syndrome(e) == code.check.bits.column(i));
  }
  BitVec e12(code.m);
  e12.set(0, true);
  e12.set(1, true);
  CHECK(code.syndrome(e12) ==
        (code.check.bits.column(0) ^ code.check.bits.column(1)));
  CHECK_THROWS_AS(code.syndrome(BitVec(code.m + 1)), std::invalid_argument);
}

TEST_CASE("kernel membership iff the term product is +-identity") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    PauliHamiltonian h = greedy_commuting(4, 2, 5, rng());
    SymplecticCode code = build_code(h);
    for (std::size_t pat = 0; pat < (std::size_t(1) << code.m); ++pat) {
      BitVec y(code.m);
      for (std::size_t i = 0; i < code.m; ++i)
        if ((pat >> i) & 1) y.set(i, true);
      PauliWord prod(h.n);
      Phase ph;
      for (std::size_t i = code.m; i-- > 0;)
        if (y.get(i)) {
          auto [p2, w2] = mul(h.terms[i].word, prod);
          ph = p2 * ph;
          prod = std::move(w2);
        }
      bool in_kernel = code.syndrome(y).is_zero();
      CHECK(in_kernel == prod.is_identity());
    }
  }
}

TEST_CASE("toric(3) distance is L^2 = 9") {
  SymplecticCode code = build_code(toric_code(3));
  DistanceReport d = min_distance_bruteforce(code, code.m);
  REQUIRE(d.kind == DistanceReport::Exact);
  CHECK(d.value == 9);
}

TEST_CASE("dimension-0 code has no nonzero codeword") {
  SymplecticCode code = build_code(cluster_ring(6));
  DistanceReport d = min_distance_bruteforce(code, 6);
  CHECK(d.kind == DistanceReport::Infinite);
}

TEST_CASE("distance matches exhaustive enumeration on random m = 12 codes") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    PauliHamiltonian h = greedy_commuting(8, 2, 12, rng());
    SymplecticCode code = build_code(h);
    DistanceReport d = min_distance_bruteforce(code, code.m);
    std::size_t best = code.m + 1;
    for (std::size_t pat = 1; pat < (std::size_t(1) << code.m); ++pat) {
      BitVec y(code.m);
      for (std::size_t i = 0; i < code.m; ++i)
        if ((pat >> i) & 1) y.set(i, true);
      if (code.syndrome(y).is_zero()) best = std::min(best, y.popcount());
    }
    if (best == code.m + 1) {
      CHECK(d.kind == DistanceReport::Infinite);
    } else {
      REQUIRE(d.kind == DistanceReport::Exact);
      CHECK(d.value == best);
    }
  }
}

TEST_CASE("tanner graph drops zero rows but keeps column indexing") {
  PauliHamiltonian h = ising_ring(4);  // pure Z: the X-block rows are zero
  SymplecticCode code = build_code(h);
  TannerGraph g = code.tanner();
  CHECK(g.data_nodes == 4);
  CHECK(g.check_nodes == 4);
  for (std::size_t c = 0; c < g.check_nodes; ++c)
    for (uint32_t v : g.check_adj[c])
      CHECK(code.check.bits.get(g.check_row[c], v));
}

namespace {

bool expansion_oracle(const TannerGraph& g, double delta, double gamma,
                      std::size_t cap) {
  std::size_t m = g.data_nodes;
  std::size_t maxs = std::min(cap, std::size_t(delta * double(m)));
  for (std::size_t pat = 1; pat < (std::size_t(1) << m); ++pat) {
    std::size_t size = std::size_t(std::popcount(uint64_t(pat)));
    if (size == 0 || size > maxs) continue;
    std::vector<char> touched(g.check_nodes, 0);
    for (std::size_t v = 0; v < m; ++v)
      if ((pat >> v) & 1)
        for (uint32_t c : g.data_adj[v]) touched[c] = 1;
    std::size_t cnt = 0;
    for (char x : touched) cnt += x;
    if (double(cnt) < gamma * double(size)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("expansion_check matches subset enumeration on random sparse instances") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 8; ++t) {
    SparseSpinGlass sg = spin_glass_sparse(15, 3, 4, 0.3, rng());
    SymplecticCode code = build_code(sg.to_hamiltonian());
    TannerGraph g = code.tanner();
    for (double gamma : {1.5, 2.0, 2.5}) {
      ExpansionReport rep = expansion_check(g, 0.25, gamma, 5);
      CHECK(rep.is_expander == expansion_oracle(g, 0.25, gamma, 5));
      if (!rep.is_expander) {
        std::vector<char> touched(g.check_nodes, 0);
        for (uint32_t v : rep.witness)
          for (uint32_t c : g.data_adj[v]) touched[c] = 1;
        std::size_t cnt = 0;
        for (char x : touched) cnt += x;
        CHECK(double(cnt) < gamma * double(rep.witness.size()));
      }
    }
  }
}

TEST_CASE("every data node with a private check expands trivially") {
  PauliHamiltonian h = independent_z(6);
  SymplecticCode code = build_code(h);
  TannerGraph g = code.tanner();
  ExpansionReport rep = expansion_check(g, 1.0, 1.0, 6);
  CHECK(rep.is_expander);
  CHECK(g.data_adj[3].size() == 1);
}

TEST_CASE("unique expansion bound (measured)") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    SparseSpinGlass sg = spin_glass_sparse(12, 3, 4, 0.0, rng());
    SymplecticCode code = build_code(sg.to_hamiltonian());
    TannerGraph g = code.tanner();
    std::size_t a = 3;
    ExpansionReport rep = expansion_check(g, 0.3, 0.0, 4);
    for (std::size_t s = 1; s < rep.min_expansion.size(); ++s) {
      if (rep.min_expansion[s] > 1e200) continue;
      double gamma = rep.min_expansion[s];
      CHECK(rep.min_unique_expansion[s] >= 2 * gamma - double(a) - 1e-9);
    }
  }
}

TEST_CASE("unique neighbor forces a nonzero syndrome") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 6; ++t) {
    SparseSpinGlass sg = spin_glass_sparse(12, 3, 4, 0.4, rng());
    SymplecticCode code = build_code(sg.to_hamiltonian());
    TannerGraph g = code.tanner();
    std::size_t m = code.m;
    std::vector<std::size_t> idx;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                            std::size_t left) {
      if (left == 0) {
        std::vector<int> touch(g.check_nodes, 0);
        for (std::size_t v : idx)
          for (uint32_t c : g.data_adj[v]) ++touch[c];
        bool has_unique = false;
        for (int x : touch) has_unique |= (x == 1);
        if (has_unique) {
          BitVec e(m);
          for (std::size_t v : idx) e.set(v, true);
          CHECK(!code.syndrome(e).is_zero());
        }
        return;
      }
      for (std::size_t v = start; v + left <= m; ++v) {
        idx.push_back(v);
        rec(v + 1, left - 1);
        idx.pop_back();
      }
    };
    for (std::size_t sz = 1; sz <= 4; ++sz) rec(0, sz);
  }
}

TEST_CASE("alist export is consistent with the matrix") {
  SymplecticCode code = build_code(toric_code(2));
  std::string text = to_alist(code.check);
  std::istringstream in(text);
  std::size_t N, M, maxc, maxr;
  in >> N >> M >> maxc >> maxr;
  CHECK(N == code.m);
  CHECK(M == code.check.rows);
  std::vector<std::size_t> cdeg(N), rdeg(M);
  for (auto& d : cdeg) in >> d;
  for (auto& d : rdeg) in >> d;
  for (std::size_t c = 0; c < N; ++c) {
    CHECK(cdeg[c] == code.check.bits.column(c).popcount());
    for (std::size_t i = 0; i < cdeg[c]; ++i) {
      std::size_t r;
      in >> r;
      CHECK(code.check.bits.get(r - 1, c));
    }
  }
  for (std::size_t r = 0; r < M; ++r) {
    CHECK(rdeg[r] == code.check.bits.row(r).popcount());
    for (std::size_t i = 0; i < rdeg[r]; ++i) {
      std::size_t c;
      in >> c;
      CHECK(code.check.bits.get(r, c - 1));
    }
  }
}

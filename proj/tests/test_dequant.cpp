#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "hdqi/dense.hpp"
#include "hdqi/dequant.hpp"
#include "hdqi/ensembles.hpp"
#include "test_util.hpp"

using namespace hdqi;

TEST_CASE("coset count with no checks is a binomial") {
  std::vector<uint32_t> cols(6, 0);
  CosetTable t(cols, 0, 6);
  for (std::size_t w = 0; w <= 6; ++w)
    CHECK(t.count(w, 0) == big_binomial(6, unsigned(w)));
}

TEST_CASE("single all-ones check on m = 4") {
  std::vector<uint32_t> cols(4, 1);
  CosetTable t(cols, 1, 4);
  CHECK(t.count(2, 0) == 6);
  CHECK(t.count(1, 0) == 0);
  CHECK(t.count(1, 1) == 4);
  CHECK(t.count(0, 0) == 1);
}

TEST_CASE("coset counts match exhaustive enumeration for random k = 3 matrices") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 6; ++t) {
    std::size_t m = 12, k = 3;
    std::vector<uint32_t> cols(m);
    for (auto& c : cols) c = uint32_t(rng() % 8);
    CosetTable table(cols, k, m);
    std::map<std::pair<std::size_t, uint32_t>, BigInt> oracle;
    for (uint32_t pat = 0; pat < (1u << m); ++pat) {
      uint32_t syn = 0;
      for (std::size_t i = 0; i < m; ++i)
        if ((pat >> i) & 1) syn ^= cols[i];
      oracle[{std::size_t(std::popcount(pat)), syn}] += 1;
    }
    for (std::size_t w = 0; w <= m; ++w)
      for (uint32_t z = 0; z < 8; ++z) {
        BigInt expect = 0;
        auto it = oracle.find({w, z});
        if (it != oracle.end()) expect = it->second;
        CHECK(table.count(w, z) == expect);
      }
  }
}

TEST_CASE("coset table satisfies the recurrence everywhere") {
  std::mt19937_64 rng(5);
  std::size_t m = 9, k = 2;
  std::vector<uint32_t> cols(m);
  for (auto& c : cols) c = uint32_t(rng() % 4);
  CosetTable t(cols, k, m);
  for (std::size_t w = 0; w <= m; ++w)
    for (std::size_t i = 1; i <= m; ++i)
      for (uint32_t x = 0; x < 4; ++x) {
        BigInt lhs = t.count(w, i - 1, x);
        BigInt rhs = t.count(w, i, x);
        if (w > 0) rhs += t.count(w - 1, i, x ^ cols[i - 1]);
        CHECK(lhs == rhs);
      }
  // boundary: N(0, m, 0) = 1 and all other (., m, .) vanish
  CHECK(t.count(0, m, 0) == 1);
  for (uint32_t x = 1; x < 4; ++x) CHECK(t.count(0, m, x) == 0);
}

TEST_CASE("coset sampler is uniform (chi-square over a small coset)") {
  std::mt19937_64 rng(7);
  std::size_t m = 8, k = 2;
  std::vector<uint32_t> cols(m);
  for (auto& c : cols) c = uint32_t(1 + rng() % 3);
  CosetTable t(cols, k, m);
  // pick a (weight, syndrome) class with a modest non-empty coset
  std::size_t w = 0;
  uint32_t z = 0;
  BigInt nb = 0;
  for (std::size_t wc = 2; wc <= m && nb == 0; ++wc)
    for (uint32_t zc = 0; zc < 4; ++zc) {
      const BigInt& c = t.count(wc, zc);
      if (c > 0 && c <= 64) {
        w = wc;
        z = zc;
        nb = c;
        break;
      }
    }
  REQUIRE(nb > 0);
  REQUIRE(nb <= 64);
  std::size_t support = nb.convert_to<std::size_t>();
  std::map<std::string, std::size_t> freq;
  std::size_t draws = 100000;
  for (std::size_t s = 0; s < draws; ++s) {
    BitVec y = t.sample(w, z, rng);
    REQUIRE(y.popcount() == w);
    uint32_t syn = 0;
    for (std::size_t i : y.ones()) syn ^= cols[i];
    REQUIRE(syn == z);
    ++freq[y.to_string()];
  }
  CHECK(freq.size() == support);
  double expect = double(draws) / double(support);
  double chi2 = 0;
  for (auto& [key, cnt] : freq) chi2 += (double(cnt) - expect) * (double(cnt) - expect) / expect;
  // dof = support - 1; the 1e-3 quantile of chi2 with <= 63 dof is < 110
  CHECK(chi2 < 110.0);
}

TEST_CASE("sampling an empty coset refuses") {
  std::vector<uint32_t> cols(4, 1);
  CosetTable t(cols, 1, 4);
  std::mt19937_64 rng(1);
  CHECK_THROWS(t.sample(1, 0, rng));
}

TEST_CASE("commuting structure of the reference models") {
  CommutingStructure cs = commuting_structure(ising_ring(5));
  CHECK(cs.independent.size() == 4);
  REQUIRE(cs.deps.size() == 1);
  // product of all five -ZZ terms: the word product is identity and the five
  // (-1) signs make the signed product -1
  CHECK(cs.deps[0].sign == -1);

  CommutingStructure ct = commuting_structure(toric_code(2));
  CHECK(ct.deps.size() == 2);
}

TEST_CASE("spectral sample: uniform filter on an independent stabilizer H") {
  PauliHamiltonian h = independent_z(4);
  auto res = spectral_sample(h, [](double) { return 1.0; }, 40000, 11);
  // weights should follow Binomial(4, 1/2)
  std::vector<std::size_t> hist(5, 0);
  for (std::size_t w : res.weights) ++hist[w];
  for (std::size_t w = 0; w <= 4; ++w) {
    double expect = double(big_binomial(4, unsigned(w)).convert_to<double>()) / 16.0;
    CHECK(double(hist[w]) / 40000.0 == doctest::Approx(expect).epsilon(0.08));
  }
  // every tableau is a full-rank valid stabilizer description
  REQUIRE(!res.tableaus.empty());
  CHECK(res.tableaus[0].gens.size() == 4);
  CHECK(res.tableaus[0].is_valid());
}

TEST_CASE("spectral sample: zero-temperature limit hits the ground tableau") {
  PauliHamiltonian h = independent_z(5);  // ground state |1^5> at energy -5
  auto res = spectral_sample(h, [](double lam) { return std::exp(-8.0 * lam); }, 50,
                             13);
  for (const auto& t : res.tableaus)
    for (std::size_t i = 0; i < t.gens.size(); ++i) CHECK(t.signs[i] == -1);
}

namespace {

DensityMatrix densify_mixture(const PauliHamiltonian& h,
                              const std::function<double(double)>& f) {
  // exact mixture over all coset strings, each state a normalized projector
  CommutingStructure cs = commuting_structure(h);
  std::size_t m = h.m();
  std::size_t rho_rank = cs.independent.size();
  std::size_t d = std::size_t(1) << h.n;
  CMat acc = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
  double total = 0;
  // enumerate all sign patterns of the independent terms
  for (std::size_t pat = 0; pat < (std::size_t(1) << rho_rank); ++pat) {
    // eigenvalue: independent contributions plus forced dependent ones
    double lam = 0;
    std::vector<int> s(rho_rank);
    for (std::size_t pos = 0; pos < rho_rank; ++pos) {
      s[pos] = (pat >> pos) & 1 ? -1 : 1;
      lam += s[pos];
    }
    for (const auto& dep : cs.deps) {
      int sd = dep.sign;
      for (std::size_t pos : dep.positions) sd *= s[pos];
      lam += sd;
    }
    double weight = f(lam);
    if (weight == 0) continue;
    CMat proj = CMat::Identity(Eigen::Index(d), Eigen::Index(d));
    for (std::size_t pos = 0; pos < rho_rank; ++pos) {
      std::size_t i = cs.independent[pos];
      CMat gen = double(s[pos] * h.terms[i].sign) * dense_word(h.terms[i].word);
      proj = 0.5 * (proj + proj * gen);
    }
    double dim = std::pow(2.0, double(h.n) - double(rho_rank));
    acc += (weight / dim) * proj;
    total += weight;
  }
  DensityMatrix out;
  out.mat = acc / total;
  (void)m;
  return out;
}

}  // namespace

TEST_CASE("exact densified mixture equals f(H)/Tr on small models") {
  for (double beta : {0.1, 0.5, 1.5}) {
    PauliHamiltonian h = ising_ring(4);
    auto f = [beta](double lam) { return std::exp(-beta * lam); };
    DensityMatrix mix = densify_mixture(h, f);
    DensityMatrix target = rho_of_function(h, f);
    CHECK(trace_distance(mix, target) < 1e-9);
  }
  // a non-diagonal commuting model too
  PauliHamiltonian cl = cluster_ring(4);
  auto f = [](double lam) { return 1.0 / (1.0 + lam * lam); };
  CHECK(trace_distance(densify_mixture(cl, f), rho_of_function(cl, f)) < 1e-9);
}

TEST_CASE("spectral sampler histogram follows the exact weight distribution") {
  PauliHamiltonian h = ising_ring(6);
  double beta = 0.7;
  auto res = spectral_sample(
      h, [beta](double lam) { return std::exp(-beta * lam); }, 30000, 17);
  std::vector<double> hist(h.m() + 1, 0.0);
  for (std::size_t w : res.weights) hist[w] += 1.0 / 30000.0;
  double tv = 0;
  for (std::size_t w = 0; w <= h.m(); ++w)
    tv += 0.5 * std::abs(hist[w] - res.exact_pw[w]);
  CHECK(tv < 0.02);
}

TEST_CASE("spectral sample rejects a vanishing filter") {
  PauliHamiltonian h = independent_z(3);
  CHECK_THROWS(spectral_sample(h, [](double) { return 0.0; }, 10, 1));
}

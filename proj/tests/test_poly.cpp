#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <random>

#include "hdqi/dense.hpp"
#include "hdqi/ensembles.hpp"
#include "hdqi/poly.hpp"
#include "hdqi/sim.hpp"
#include "test_util.hpp"

using namespace hdqi;

namespace {

// brute-force a(m, l, r): count sequences of length l over [m] whose parity
// pattern is exactly {0, .., r-1}
BigInt a_bruteforce(unsigned m, unsigned ell, unsigned r) {
  BigInt count = 0;
  std::vector<unsigned> idx(ell, 0);
  if (ell == 0) return r == 0 ? 1 : 0;
  while (true) {
    unsigned parity = 0;
    for (unsigned i : idx) parity ^= (1u << i);
    unsigned target = (r == 0) ? 0u : ((1u << r) - 1u);
    if (parity == target) ++count;
    std::size_t pos = 0;
    while (pos < ell && ++idx[pos] == m) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == ell) break;
  }
  return count;
}

}  // namespace

TEST_CASE("a(m,l,r) matches brute-force monomial expansion for m,l <= 6") {
  for (unsigned m = 1; m <= 6; ++m)
    for (unsigned ell = 0; ell <= 6; ++ell)
      for (unsigned r = 0; r <= std::min(m, ell + 1); ++r)
        CHECK(a_coefficient(m, ell, r) == a_bruteforce(m, ell, r));
}

TEST_CASE("a(m,l,l) = l! and parity vanishing") {
  CHECK(a_coefficient(4, 3, 3) == 6);
  CHECK(a_coefficient(6, 5, 5) == 120);
  CHECK(a_coefficient(5, 4, 3) == 0);  // parity mismatch
  CHECK(a_coefficient(5, 2, 4) == 0);  // r > l
}

TEST_CASE("symmetric_weights examples") {
  // P(x) = x^2 on m = 2: w = (2, 0, 2)
  SymmetricWeights sw = symmetric_weights(UniPoly({0, 0, 1}), 2);
  REQUIRE(sw.w.size() == 3);
  CHECK(sw.w[0] == doctest::Approx(2.0));
  CHECK(sw.w[1] == doctest::Approx(0.0));
  CHECK(sw.w[2] == doctest::Approx(2.0));
  // P(x) = x: w_1 = 1, others 0
  SymmetricWeights lin = symmetric_weights(UniPoly({0, 1}), 5);
  CHECK(lin.w[0] == doctest::Approx(0.0));
  CHECK(lin.w[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(symmetric_weights(UniPoly({0, 0, 0, 1}), 2), std::invalid_argument);
}

TEST_CASE("symmetric expansion reproduces P(H) densely for random commuting H") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 12; ++t) {
    std::size_t m = 2 + rng() % 5;            // up to 6 terms
    PauliHamiltonian h = greedy_commuting(4, 2, m, rng());
    std::size_t deg = 1 + rng() % std::min<std::size_t>(m, 4);
    std::vector<double> cs(deg + 1);
    for (auto& c : cs) c = std::uniform_real_distribution<double>(-1, 1)(rng);
    UniPoly poly(cs);
    SymmetricWeights sw = symmetric_weights(poly, m);

    // dense: sum_j w_j e_j(z) with z_i = v_i P_i
    std::size_t d = std::size_t(1) << h.n;
    CMat acc = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
    for (std::size_t pat = 0; pat < (std::size_t(1) << m); ++pat) {
      std::size_t w = std::size_t(std::popcount(uint64_t(pat)));
      if (w >= sw.w.size() || sw.w[w] == 0.0) continue;
      CMat term = CMat::Identity(Eigen::Index(d), Eigen::Index(d));
      for (std::size_t i = 0; i < m; ++i)
        if ((pat >> i) & 1)
          term = term * (double(h.terms[i].sign) * dense_word(h.terms[i].word));
      acc += sw.w[w] * term;
    }
    CMat H = dense_hamiltonian(h);
    CMat P = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
    for (std::size_t k = poly.coeffs.size(); k-- > 0;)
      P = P * H + poly.coeffs[k] * CMat::Identity(Eigen::Index(d), Eigen::Index(d));
    CHECK((acc - P).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, P.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("gibbs_poly degree bound and example") {
  GibbsPoly g = gibbs_poly(1.0, 10.0, 0.1);  // beta K = 10
  CHECK(g.degree == 15);                     // ceil(11.2 + 0.648 ln 120)
  GibbsPoly tiny = gibbs_poly(0.0, 5.0, 0.1);
  CHECK(tiny.degree >= 1);
  for (double x : {-5.0, -1.0, 0.0, 2.0, 5.0})
    CHECK(tiny.eval_x(x) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gibbs_poly grid relative error stays within the target") {
  for (auto [beta, K, eps] : {std::tuple{1.0, 1.0, 0.01}, {0.5, 4.0, 0.05},
                              {1.0, 10.0, 0.1}, {0.2, 6.0, 0.1}}) {
    GibbsPoly g = gibbs_poly(beta, K, eps);
    double err = g.grid_relative_error(10000);
    // squared-polynomial relative error <= 3*delta with delta = eps/6
    CHECK(err <= eps / 2.0);
  }
}

TEST_CASE("bessel backward recurrence against the series for k <= 5") {
  for (double a : {0.3, 1.0, 2.5, 6.0}) {
    auto got = bessel_i_list(a, 8);
    for (unsigned k = 0; k <= 5; ++k) {
      // series I_k(a) = sum_j (a/2)^{2j+k} / (j! (j+k)!)
      long double sum = 0, half = a / 2.0L;
      for (unsigned j = 0; j < 60; ++j) {
        long double t = powl(half, 2.0L * j + k);
        for (unsigned q = 1; q <= j; ++q) t /= q;
        for (unsigned q = 1; q <= j + k; ++q) t /= q;
        sum += t;
      }
      CHECK(got[k] == doctest::Approx(double(sum)).epsilon(1e-10));
    }
  }
}

TEST_CASE("gibbs polynomial approximates the Gibbs state in trace distance") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 4; ++t) {
    PauliHamiltonian h = greedy_commuting(4, 2, 5, rng());
    double beta = 0.15, eps = 0.1;
    GibbsPoly g = gibbs_poly(beta, double(h.m()), eps);
    if (g.power.degree() > h.m()) continue;  // dicke route needs deg <= m
    DensityMatrix rho = rho_direct(h, g.power);
    DensityMatrix target = gibbs_exact(h, beta);
    CHECK(trace_distance(rho, target) <= eps);
  }
}

TEST_CASE("interpolate_sqrt basics") {
  UniPoly one = interpolate_sqrt([](double) { return 1.0; }, 5);
  for (double x : {-5.0, -3.0, 1.0, 5.0})
    CHECK(one.eval(x) == doctest::Approx(1.0).epsilon(1e-10));

  // indicator of lambda = m: P^2 vanishes on the rest of the grid
  std::size_t m = 6;
  UniPoly ind = interpolate_sqrt(
      [&](double x) { return x == double(m) ? 1.0 : 0.0; }, m);
  for (std::size_t i = 0; i < m; ++i) {
    double x = -double(m) + 2.0 * double(i);
    CHECK(std::abs(ind.eval(x)) < 1e-8);
  }
  CHECK(ind.eval(double(m)) == doctest::Approx(1.0).epsilon(1e-8));

  // exponential weights: P^2 = f on the grid
  double beta = 0.4;
  UniPoly ex = interpolate_sqrt([&](double x) { return std::exp(-beta * x); }, 6);
  for (std::size_t i = 0; i <= 6; ++i) {
    double x = -6.0 + 2.0 * double(i);
    double v = ex.eval(x);
    CHECK(v * v == doctest::Approx(std::exp(-beta * x)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(interpolate_sqrt([](double x) { return x; }, 4),
                  std::invalid_argument);
}

namespace {

// dense operator for e_a products over explicit variables
CMat dense_E(const PauliHamiltonian& h, const std::vector<std::vector<std::size_t>>& blocks,
             const std::vector<std::size_t>& counts,
             const std::vector<std::size_t>& var_of_pos) {
  std::size_t d = std::size_t(1) << h.n;
  CMat out = CMat::Identity(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    // e_{counts[t]} over the block's variables
    std::vector<CMat> evals(counts[t] + 1);
    for (auto& e : evals) e = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
    evals[0] = CMat::Identity(Eigen::Index(d), Eigen::Index(d));
    std::vector<CMat> cur = evals;
    for (std::size_t pos : blocks[t]) {
      std::size_t i = var_of_pos[pos];
      CMat z = double(h.terms[i].sign) * dense_word(h.terms[i].word);
      for (std::size_t a = std::min(counts[t], cur.size() - 1); a-- > 0;)
        cur[a + 1] = cur[a + 1] + z * cur[a];
    }
    out = out * cur[counts[t]];
  }
  return out;
}

}  // namespace

TEST_CASE("blockwise_expand with no relations reduces to symmetric weights") {
  UniPoly poly({0.5, -1.0, 2.0, 0.25});
  std::size_t m = 7;
  BlockExpansion bx = blockwise_expand(poly, m, {});
  SymmetricWeights sw = symmetric_weights(poly, m);
  REQUIRE(bx.blocks.size() == 1);
  REQUIRE(bx.dims[0] == m);
  for (std::size_t a = 0; a <= poly.degree(); ++a)
    CHECK(bx.gamma[a] == doctest::Approx(sw.w[a]).epsilon(1e-12));
  for (std::size_t a = poly.degree() + 1; a <= m; ++a)
    CHECK(bx.gamma[a] == doctest::Approx(0.0));
}

TEST_CASE("blockwise_expand reconstructs P(H) on the Ising ring") {
  for (std::size_t L : {3, 4, 5}) {
    PauliHamiltonian h = ising_ring(L);
    SymplecticCode code = build_code(h);
    auto rels = relations_from_hamiltonian(h, code);
    REQUIRE(rels.size() == 1);
    std::mt19937_64 rng(L);
    std::vector<double> cs(h.m() + 1);
    for (auto& c : cs) c = std::uniform_real_distribution<double>(-1, 1)(rng);
    UniPoly poly(cs);
    BlockExpansion bx = blockwise_expand(poly, h.m(), rels);

    // reconstruct sum_a gamma_a E_a densely over the free variables
    std::size_t d = std::size_t(1) << h.n;
    CMat acc = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
    std::vector<std::size_t> a(bx.blocks.size(), 0);
    std::function<void(std::size_t)> loop = [&](std::size_t t) {
      if (t == bx.blocks.size()) {
        double gamma = bx.gamma_at(a);
        if (gamma != 0.0) acc += gamma * dense_E(h, bx.blocks, a, bx.free_vars);
        return;
      }
      for (a[t] = 0; a[t] <= bx.dims[t]; ++a[t]) loop(t + 1);
      a[t] = 0;
    };
    loop(0);

    CMat H = dense_hamiltonian(h);
    CMat P = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
    for (std::size_t k = poly.coeffs.size(); k-- > 0;)
      P = P * H + poly.coeffs[k] * CMat::Identity(Eigen::Index(d), Eigen::Index(d));
    CHECK((acc - P).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, P.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("blockwise_expand with a sign -1 relation matches the dense oracle") {
  // two qubits: Z1, Z2, and -Z1 Z2 so that the product of the signed terms
  // z1 z2 z3 = -1
  PauliHamiltonian h;
  h.n = 2;
  h.terms.push_back({1, PauliWord::single(2, 0, 'Z')});
  h.terms.push_back({1, PauliWord::single(2, 1, 'Z')});
  PauliWord zz(2);
  zz.set_letter(0, 'Z');
  zz.set_letter(1, 'Z');
  h.terms.push_back({-1, zz});
  SymplecticCode code = build_code(h);
  auto rels = relations_from_hamiltonian(h, code);
  REQUIRE(rels.size() == 1);
  CHECK(rels[0].sign == -1);

  UniPoly poly({0.0, 0.0, 1.0});  // x^2
  BlockExpansion bx = blockwise_expand(poly, h.m(), rels);
  std::size_t d = std::size_t(1) << h.n;
  CMat acc = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
  std::vector<std::size_t> a(bx.blocks.size(), 0);
  std::function<void(std::size_t)> loop = [&](std::size_t t) {
    if (t == bx.blocks.size()) {
      double gamma = bx.gamma_at(a);
      if (gamma != 0.0) acc += gamma * dense_E(h, bx.blocks, a, bx.free_vars);
      return;
    }
    for (a[t] = 0; a[t] <= bx.dims[t]; ++a[t]) loop(t + 1);
    a[t] = 0;
  };
  loop(0);
  CMat H = dense_hamiltonian(h);
  CHECK((acc - H * H).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("blockwise_expand rejects dependent relations") {
  Relation r1{{0, 1}, 1}, r2{{1, 2}, 1}, r3{{0, 2}, 1};  // r3 = r1 + r2
  UniPoly poly({0, 1});
  CHECK_THROWS_AS(blockwise_expand(poly, 4, {r1, r2, r3}), std::invalid_argument);
}

TEST_CASE("blockwise gamma is the unique expansion (re-expansion fixed point)") {
  // expand, rebuild the polynomial values on all sign assignments, and check
  // that a second expansion with the same relations returns the same gamma
  PauliHamiltonian h = ising_ring(4);
  SymplecticCode code = build_code(h);
  auto rels = relations_from_hamiltonian(h, code);
  UniPoly poly({1.0, 0.5, -2.0, 0.0, 1.0});
  BlockExpansion b1 = blockwise_expand(poly, h.m(), rels);
  BlockExpansion b2 = blockwise_expand(poly, h.m(), rels);
  REQUIRE(b1.gamma.size() == b2.gamma.size());
  for (std::size_t i = 0; i < b1.gamma.size(); ++i)
    CHECK(b1.gamma[i] == doctest::Approx(b2.gamma[i]));
}

TEST_CASE("unipoly json round trip") {
  UniPoly p({1.5, 0.0, -2.25});
  UniPoly q = UniPoly::from_json(p.to_json());
  REQUIRE(q.coeffs.size() == p.coeffs.size());
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) CHECK(q.coeffs[i] == p.coeffs[i]);
}

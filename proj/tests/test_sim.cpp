#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hdqi/ensembles.hpp"
#include "hdqi/sim.hpp"
#include "test_util.hpp"

using namespace hdqi;

namespace {

PauliHamiltonian fig2_hamiltonian() {
  PauliHamiltonian h;
  h.n = 3;
  PauliWord a(3), b(3), c(3);
  a.set_letter(0, 'X');
  a.set_letter(1, 'Z');
  a.set_letter(2, 'X');
  b.set_letter(0, 'Z');
  b.set_letter(1, 'X');
  b.set_letter(2, 'Z');
  c.set_letter(0, 'X');
  h.terms = {{1, a}, {1, b}, {-1, c}};
  return h;
}

PauliHamiltonian distance_ok_commuting(std::size_t n, std::size_t k, std::size_t m,
                                       std::size_t ell, std::mt19937_64& rng) {
  for (int tries = 0; tries < 1000; ++tries) {
    PauliHamiltonian h;
    try {
      h = greedy_commuting(n, k, m, rng());
    } catch (const std::runtime_error&) {
      continue;
    }
    SymplecticCode code = build_code(h);
    DistanceReport d = min_distance_bruteforce(code, m);
    if (d.kind == DistanceReport::Infinite ||
        (d.kind == DistanceReport::Exact && d.value >= 2 * ell + 1))
      return h;
  }
  throw std::runtime_error("no instance found");
}

}  // namespace

TEST_CASE("rho_direct closed-form examples") {
  PauliHamiltonian z1;
  z1.n = 1;
  z1.terms.push_back({1, PauliWord::single(1, 0, 'Z')});
  DensityMatrix r = rho_direct(z1, UniPoly({0, 1}));
  CHECK(std::abs(r.mat(0, 0) - cplx(0.5)) < 1e-12);
  CHECK(std::abs(r.mat(1, 1) - cplx(0.5)) < 1e-12);
  CHECK(std::abs(r.mat(0, 1)) < 1e-12);

  PauliHamiltonian zz;
  zz.n = 2;
  zz.terms.push_back({1, PauliWord::single(2, 0, 'Z')});
  zz.terms.push_back({1, PauliWord::single(2, 1, 'Z')});
  DensityMatrix r2 = rho_direct(zz, UniPoly({0, 1}));
  CHECK(std::abs(r2.mat(0, 0) - cplx(0.5)) < 1e-12);
  CHECK(std::abs(r2.mat(3, 3) - cplx(0.5)) < 1e-12);
  CHECK(std::abs(r2.mat(1, 1)) < 1e-12);
  CHECK(std::abs(r2.mat(2, 2)) < 1e-12);

  // Gibbs polynomial at beta -> 0 gives the maximally mixed state
  GibbsPoly g = gibbs_poly(1e-9, 2.0, 0.05);
  DensityMatrix r3 = rho_direct(zz, g.power);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(r3.mat(i, i) - cplx(0.25)) < 0.05);

  PauliHamiltonian zero_trace;
  zero_trace.n = 1;
  zero_trace.terms.push_back({1, PauliWord::single(1, 0, 'Z')});
  CHECK_THROWS(rho_direct(zero_trace, UniPoly({0.0})));
}

TEST_CASE("bell transform maps each Bell state to its symplectic label") {
  for (std::size_t n : {1u, 2u}) {
    std::size_t dim = std::size_t(1) << (2 * n);
    // Gram matrix of all Bell states is the identity
    std::vector<DenseState> bells;
    for (std::size_t pat = 0; pat < dim; ++pat) {
      PauliWord p(n);
      for (std::size_t q = 0; q < n; ++q) {
        if ((pat >> q) & 1) p.x.set(q, true);
        if ((pat >> (n + q)) & 1) p.z.set(q, true);
      }
      DenseState s = max_entangled(n);
      // apply op(p) to register B (bits [n, 2n))
      DenseState out(2 * n);
      uint64_t xmask = 0, zmask = 0;
      for (std::size_t q : p.x.ones()) xmask |= uint64_t(1) << (n + q);
      for (std::size_t q : p.z.ones()) zmask |= uint64_t(1) << (n + q);
      int ybase = int(BitVec::and_popcount(p.x, p.z) % 4);
      static const cplx ipow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
      for (uint64_t idx = 0; idx < dim; ++idx) {
        if (s.amp[idx] == cplx(0)) continue;
        int e = ybase + 2 * (std::popcount(idx & zmask) & 1);
        out.amp[idx ^ xmask] += ipow[e & 3] * s.amp[idx];
      }
      bells.push_back(std::move(out));
    }
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) {
        cplx g = 0;
        for (std::size_t i = 0; i < dim; ++i)
          g += std::conj(bells[a].amp[i]) * bells[b].amp[i];
        CHECK(std::abs(g - (a == b ? cplx(1) : cplx(0))) < 1e-12);
      }
    // transform sends op(P)|Phi> to exactly |x(P)>_B |z(P)>_C
    for (std::size_t pat = 0; pat < dim; ++pat) {
      DenseState s = bells[pat];
      bell_transform(s);
      std::size_t xpart = pat & ((std::size_t(1) << n) - 1);
      std::size_t zpart = pat >> n;
      std::size_t want = (xpart << n) | zpart;
      for (std::size_t i = 0; i < dim; ++i) {
        cplx expect = (i == want) ? cplx(1) : cplx(0);
        CHECK(std::abs(s.amp[i] - expect) < 1e-12);
      }
      bell_transform_inverse(s);
      for (std::size_t i = 0; i < dim; ++i)
        CHECK(std::abs(s.amp[i] - bells[pat].amp[i]) < 1e-12);
    }
  }
}

TEST_CASE("single-qubit X maps to |10> under the X-first layout") {
  DenseState s = max_entangled(1);
  // X on register B
  std::swap(s.amp[0b00], s.amp[0b10]);
  std::swap(s.amp[0b01], s.amp[0b11]);
  bell_transform(s);
  CHECK(std::abs(s.amp[0b10] - cplx(1)) < 1e-12);  // B=1 (x), C=0 (z)
}

TEST_CASE("distance metrics closed forms") {
  DensityMatrix a, b;
  a.mat = CMat::Zero(2, 2);
  a.mat(0, 0) = 1;
  b.mat = CMat::Identity(2, 2) * 0.5;
  auto [td_same, f_same] = distance_metrics(a, a);
  CHECK(td_same == doctest::Approx(0.0));
  CHECK(f_same == doctest::Approx(1.0));
  DensityMatrix c;
  c.mat = CMat::Zero(2, 2);
  c.mat(1, 1) = 1;
  auto [td_orth, f_orth] = distance_metrics(a, c);
  CHECK(td_orth == doctest::Approx(1.0));
  CHECK(f_orth == doctest::Approx(0.0).epsilon(1e-8));
  auto [td_mix, f_mix] = distance_metrics(b, a);
  CHECK(td_mix == doctest::Approx(0.5));
  CHECK(f_mix == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("hdqi_run matches rho_direct on commuting instances (dicke pilot)") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 6; ++t) {
    PauliHamiltonian h = distance_ok_commuting(4, 2, 4, 2, rng);
    UniPoly poly({0.4, 1.0, -0.3});
    HdqiResult run = hdqi_run(h, poly, lookup_decoder_factory(2), PilotMode::Dicke);
    DensityMatrix direct = rho_direct(h, poly);
    CHECK(trace_distance(run.rho, direct) < 1e-9);
    CHECK(run.a_zero_weight() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("hdqi_run matches rho_direct on the non-commuting example (mps pilot)") {
  PauliHamiltonian h = fig2_hamiltonian();
  UniPoly poly({0.2, 0.7, 0.5});  // degree 2
  HdqiResult run = hdqi_run(h, poly, lookup_decoder_factory(2), PilotMode::GeneralMps);
  DensityMatrix direct = rho_direct(h, poly);
  CHECK(trace_distance(run.rho, direct) < 1e-9);
  // density matrix invariants: hermitian, unit trace, PSD
  CHECK(run.rho.hermiticity_error() < 1e-10);
  CHECK(run.rho.trace_error() < 1e-10);
  Eigen::SelfAdjointEigenSolver<CMat> es(run.rho.mat);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("purification: B-reduction equals rho, C-reduction is its transpose") {
  PauliHamiltonian h = fig2_hamiltonian();
  UniPoly poly({0.0, 1.0, 0.25});
  HdqiResult run = hdqi_run(h, poly, lookup_decoder_factory(2), PilotMode::GeneralMps);
  DenseState pure = run.purification();
  // perfect decoding: all weight on A =ature
  CHECK(run.a_zero_weight() == doctest::Approx(1.0).epsilon(1e-9));
  std::size_t d = std::size_t(1) << h.n;
  CMat rb = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t b1 = 0; b1 < d; ++b1)
    for (std::size_t b2 = 0; b2 < d; ++b2) {
      cplx acc = 0;
      for (std::size_t c = 0; c < d; ++c)
        acc += pure.amp[(b1 << h.n) | c] * std::conj(pure.amp[(b2 << h.n) | c]);
      rb(Eigen::Index(b1), Eigen::Index(b2)) = acc;
    }
  CHECK((rb - run.rho.mat).cwiseAbs().maxCoeff() < 1e-9);
  DensityMatrix rc = run.reduced_on_C();
  CHECK((rc.mat - run.rho.mat.transpose()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("blockwise pilot prepares arbitrary spectral filters on the Ising ring") {
  PauliHamiltonian h = ising_ring(4);
  auto f = [](double lambda) { return std::exp(-0.3 * lambda) + 0.1 * lambda * lambda; };
  UniPoly poly = interpolate_sqrt(f, h.m());
  HdqiResult run = hdqi_run(h, poly, ge_decoder_factory(), PilotMode::Blockwise);
  DensityMatrix target = rho_of_function(h, f);
  CHECK(trace_distance(run.rho, target) < 1e-9);

  // a Gibbs filter too
  auto gibbs = [](double lambda) { return std::exp(-0.5 * lambda); };
  UniPoly p2 = interpolate_sqrt(gibbs, h.m());
  HdqiResult run2 = hdqi_run(h, p2, ge_decoder_factory(), PilotMode::Blockwise);
  CHECK(trace_distance(run2.rho, rho_of_function(h, gibbs)) < 1e-9);
}

TEST_CASE("pilot/Hamiltonian mismatches are rejected") {
  PauliHamiltonian h = fig2_hamiltonian();  // non-commuting
  CHECK_THROWS_AS(hdqi_run(h, UniPoly({0, 1}), lookup_decoder_factory(1), PilotMode::Dicke),
                  std::invalid_argument);
  CHECK_THROWS_AS(hdqi_run(h, UniPoly({0, 1}), lookup_decoder_factory(1), PilotMode::Blockwise),
                  std::invalid_argument);
}

TEST_CASE("inject_faults: epsilon = 0 leaves the decoder unchanged") {
  std::mt19937_64 rng(43);
  PauliHamiltonian h = distance_ok_commuting(4, 2, 4, 2, rng);
  UniPoly poly({0.4, 1.0, -0.3});
  HdqiResult clean = hdqi_run(h, poly, lookup_decoder_factory(2), PilotMode::Dicke);
  HdqiResult also = hdqi_run(h, poly, lookup_decoder_factory(2), PilotMode::Dicke,
                             FaultSpec{0.0, 7});
  CHECK(trace_distance(clean.rho, also.rho) < 1e-12);
}

TEST_CASE("fault bounds: fidelity >= 1 - eps and trace distance <= sqrt(2 eps)") {
  std::mt19937_64 rng(47);
  for (double eps : {0.1, 0.2}) {
    for (int t = 0; t < 3; ++t) {
      PauliHamiltonian h = distance_ok_commuting(5, 2, 5, 2, rng);
      UniPoly poly({0.3, 1.0, 0.5});
      HdqiResult clean = hdqi_run(h, poly, lookup_decoder_factory(2), PilotMode::Dicke);
      HdqiResult noisy = hdqi_run(h, poly, lookup_decoder_factory(2), PilotMode::Dicke,
                                  FaultSpec{eps, 1234 + uint64_t(t)});
      auto [td, fid] = distance_metrics(noisy.rho, clean.rho);
      CHECK(fid >= 1.0 - eps - 1e-9);
      CHECK(td <= std::sqrt(2.0 * eps) + 1e-9);
    }
  }
}

TEST_CASE("faulty decoders leave the first register nonzero exactly on failures") {
  std::mt19937_64 rng(53);
  PauliHamiltonian h = distance_ok_commuting(5, 2, 5, 2, rng);
  SymplecticCode code = build_code(h);
  auto inner = std::make_unique<LookupDecoder>(code, 2);
  FaultyDecoder faulty(std::move(inner), code, 2, 0.3, 99);
  CHECK(faulty.corrupted_count() > 0);
  LookupDecoder reference(code, 2);
  std::size_t failures = 0, total = 0;
  for (std::size_t i = 0; i < code.m; ++i)
    for (std::size_t j = i; j < code.m; ++j) {
      BitVec e(code.m);
      e.set(i, true);
      e.set(j, true);  // i == j gives weight 1
      BitVec s = code.syndrome(e);
      BitVec after = oracle_apply(faulty, e, s);
      BitVec after_ref = oracle_apply(reference, e, s);
      CHECK(after_ref.is_zero());
      ++total;
      if (!after.is_zero()) {
        ++failures;
        CHECK(after == e);  // the fixed wrong answer is the zero correction
      }
    }
  CHECK(failures == faulty.corrupted_count());
}

TEST_CASE("dense budget is enforced") {
  PauliHamiltonian h;
  h.n = 11;
  for (int i = 0; i < 8; ++i)
    h.terms.push_back({1, PauliWord::single(11, std::size_t(i), 'Z')});
  CHECK_THROWS_AS(
      hdqi_run_amplitudes(h, std::vector<double>(256, 1.0), GeUniqueDecoder(build_code(h))),
      std::invalid_argument);
}

#include "hdqi/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace hdqi {

std::vector<Relation> relations_from_hamiltonian(const PauliHamiltonian& h,
                                                 const SymplecticCode& code) {
  std::vector<Relation> rels;
  for (const BitVec& kv : code.check.bits.kernel_basis()) {
    Relation rel;
    Phase ph;
    PauliWord prod(h.n);
    int vsign = 1;
    auto idxs = kv.ones();
    for (std::size_t pos = idxs.size(); pos-- > 0;) {
      std::size_t i = idxs[pos];
      auto [p2, w2] = mul(h.terms[i].word, prod);
      ph = p2 * ph;
      prod = std::move(w2);
      vsign *= h.terms[i].sign;
      rel.support.push_back(i);
    }
    std::sort(rel.support.begin(), rel.support.end());
    if (!prod.is_identity() || !ph.is_real())
      throw std::logic_error("relations_from_hamiltonian: kernel product is not +-identity");
    rel.sign = vsign * ph.sign();
    rels.push_back(std::move(rel));
  }
  return rels;
}

DecoderFactory lookup_decoder_factory(std::size_t ell) {
  return [ell](const SymplecticCode& c) -> std::unique_ptr<Decoder> {
    return std::make_unique<LookupDecoder>(c, ell);
  };
}

DecoderFactory ge_decoder_factory() {
  return [](const SymplecticCode& c) -> std::unique_ptr<Decoder> {
    return std::make_unique<GeUniqueDecoder>(c);
  };
}

DecoderFactory bp_decoder_factory(BpParams params) {
  return [params](const SymplecticCode& c) -> std::unique_ptr<Decoder> {
    return std::make_unique<BpDecoder>(c, params);
  };
}

FaultyDecoder::FaultyDecoder(std::unique_ptr<Decoder> inner,
                             const SymplecticCode& code, std::size_t ell,
                             double epsilon, uint64_t seed)
    : inner_(std::move(inner)) {
  if (epsilon < 0 || epsilon > 1)
    throw std::invalid_argument("inject_faults: 0 <= epsilon <= 1 required");
  if (epsilon == 0) return;
  std::size_t m = code.m;
  std::vector<BitVec> cols;
  for (std::size_t i = 0; i < m; ++i) cols.push_back(code.check.bits.column(i));
  std::mt19937_64 rng(seed);
  for (std::size_t w = 1; w <= ell; ++w) {
    // enumerate the weight class, then corrupt a floor(eps * count) subset
    std::vector<BitVec> syndromes;
    std::vector<std::size_t> pick;
    BitVec acc(code.check.rows);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth,
                                                            std::size_t start) {
      if (depth == w) {
        syndromes.push_back(acc);
        return;
      }
      for (std::size_t i = start; i + (w - depth) <= m; ++i) {
        acc ^= cols[i];
        rec(depth + 1, i + 1);
        acc ^= cols[i];
      }
    };
    rec(0, 0);
    std::size_t bad = std::size_t(epsilon * double(syndromes.size()));
    std::shuffle(syndromes.begin(), syndromes.end(), rng);
    for (std::size_t i = 0; i < bad; ++i) corrupted_.emplace(syndromes[i], true);
  }
}

DecodeResult FaultyDecoder::decode(const BitVec& syndrome) const {
  if (corrupted_.count(syndrome))
    return {DecodeResult::DetectedFailure, BitVec(inner_->block_length())};
  return inner_->decode(syndrome);
}

DenseState HdqiResult::purification() const {
  std::size_t two_n = 2 * n;
  DenseState bc(two_n);
  for (std::size_t i = 0; i < bc.amp.size(); ++i) bc.amp[i] = state.amp[i];
  bc.normalize();
  return bc;
}

double HdqiResult::a_zero_weight() const {
  double s = 0;
  std::size_t lim = std::size_t(1) << (2 * n);
  for (std::size_t i = 0; i < lim; ++i) s += std::norm(state.amp[i]);
  return s;
}

DensityMatrix HdqiResult::reduced_on_C() const {
  std::size_t d = std::size_t(1) << n;
  DensityMatrix rho;
  rho.mat = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
  std::size_t abits = pilot_qubits;
  for (std::size_t a = 0; a < (std::size_t(1) << abits); ++a)
    for (std::size_t b = 0; b < d; ++b) {
      std::size_t base = (a << (2 * n)) | (b << n);
      for (std::size_t c1 = 0; c1 < d; ++c1) {
        cplx v1 = state.amp[base | c1];
        if (v1 == cplx(0)) continue;
        for (std::size_t c2 = 0; c2 < d; ++c2)
          rho.mat(Eigen::Index(c1), Eigen::Index(c2)) += v1 * std::conj(state.amp[base | c2]);
      }
    }
  return rho;
}

HdqiResult hdqi_run_amplitudes(const PauliHamiltonian& h,
                               std::vector<double> pilot_amplitudes,
                               const Decoder& decoder) {
  std::size_t m = h.m(), n = h.n;
  if (m + 2 * n > 26)
    throw std::invalid_argument("hdqi_run: dense budget is m + 2n <= 26");
  if (pilot_amplitudes.size() != (std::size_t(1) << m))
    throw std::invalid_argument("hdqi_run: pilot amplitude table has wrong size");

  double norm2 = 0;
  for (double a : pilot_amplitudes) norm2 += a * a;
  if (!(norm2 > 0)) throw std::invalid_argument("hdqi_run: pilot state is zero");
  double inv = 1.0 / std::sqrt(norm2);

  DenseState s(m + 2 * n);
  // |pilot>_A (x) |Phi^n>_BC
  DenseState phi = max_entangled(n);
  std::size_t bc_dim = std::size_t(1) << (2 * n);
  for (std::size_t a = 0; a < pilot_amplitudes.size(); ++a) {
    if (pilot_amplitudes[a] == 0) continue;
    double w = pilot_amplitudes[a] * inv;
    for (std::size_t bc = 0; bc < bc_dim; ++bc)
      if (phi.amp[bc] != cplx(0)) s.amp[(a << (2 * n)) | bc] = w * phi.amp[bc];
  }

  // sign phases Z^{(1-v_i)/2} on register A
  uint64_t negmask = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (h.terms[i].sign < 0) negmask |= uint64_t(1) << i;
  if (negmask) {
    for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
      uint64_t a = idx >> (2 * n);
      if (std::popcount(a & negmask) & 1) s.amp[idx] = -s.amp[idx];
    }
  }

  // controlled Pauli cascade; descending circuit order gives the canonical
  // increasing-index operator product P_1 P_2 ... P_m on register B
  static const cplx ipow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  for (std::size_t i = m; i-- > 0;) {
    const PauliWord& p = h.terms[i].word;
    uint64_t xmask = 0, zmask = 0;
    for (std::size_t q : p.x.ones()) xmask |= uint64_t(1) << (n + q);
    for (std::size_t q : p.z.ones()) zmask |= uint64_t(1) << (n + q);
    int ybase = int(BitVec::and_popcount(p.x, p.z) % 4);
    uint64_t ctrl = uint64_t(1) << (2 * n + i);
    if (xmask == 0) {
      for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
        if (!(idx & ctrl)) continue;
        int e = ybase;  // zero here, but keep the general form
        if (std::popcount(idx & zmask) & 1) e += 2;
        if (e & 3) s.amp[idx] *= ipow[e & 3];
      }
    } else {
      for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
        if (!(idx & ctrl)) continue;
        std::size_t jdx = idx ^ xmask;
        if (jdx < idx) continue;  // handle each orbit once
        // op|b> = i^{|x&z|} (-1)^{z.b} |b ^ x>
        int e1 = ybase + 2 * (std::popcount(idx & zmask) & 1);
        int e2 = ybase + 2 * (std::popcount(jdx & zmask) & 1);
        cplx a = s.amp[idx], b = s.amp[jdx];
        s.amp[jdx] = ipow[e1 & 3] * a;
        s.amp[idx] = ipow[e2 & 3] * b;
      }
    }
  }

  bell_transform(s, n);

  // syndrome-controlled XOR on register A
  std::size_t syn_dim = std::size_t(1) << (2 * n);
  std::vector<uint32_t> dec_of(syn_dim, 0);
  std::vector<char> dec_ok(syn_dim, 0);
  for (std::size_t pat = 0; pat < syn_dim; ++pat) {
    BitVec syn(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      if ((pat >> (n + j)) & 1) syn.set(j, true);       // x part from field B
      if ((pat >> j) & 1) syn.set(n + j, true);         // z part from field C
    }
    DecodeResult r = decoder.decode(syn);
    if (r.status == DecodeResult::Decoded) {
      dec_ok[pat] = 1;
      uint32_t bits = 0;
      for (std::size_t i : r.error_vector.ones()) bits |= uint32_t(1) << i;
      dec_of[pat] = bits;
    }
  }
  for (std::size_t pat = 0; pat < syn_dim; ++pat) {
    if (!dec_ok[pat] || dec_of[pat] == 0) continue;
    uint64_t mask = uint64_t(dec_of[pat]) << (2 * n);
    for (std::size_t a = 0; a < pilot_amplitudes.size(); ++a) {
      std::size_t idx = (a << (2 * n)) | pat;
      std::size_t jdx = idx ^ mask;
      if (jdx > idx) std::swap(s.amp[idx], s.amp[jdx]);
    }
  }

  bell_transform_inverse(s, n);

  double drift = std::abs(s.norm() - 1.0);
  if (drift > 1e-10) throw std::logic_error("hdqi_run: norm drift above 1e-10");

  HdqiResult out;
  out.n = n;
  out.pilot_qubits = m;
  out.state = std::move(s);

  // reduced state on B: trace over A and C
  std::size_t d = std::size_t(1) << n;
  out.rho.mat = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t a = 0; a < pilot_amplitudes.size(); ++a)
    for (std::size_t c = 0; c < d; ++c) {
      std::size_t base = (a << (2 * n)) | c;
      for (std::size_t b1 = 0; b1 < d; ++b1) {
        cplx v1 = out.state.amp[base | (b1 << n)];
        if (v1 == cplx(0)) continue;
        for (std::size_t b2 = 0; b2 < d; ++b2)
          out.rho.mat(Eigen::Index(b1), Eigen::Index(b2)) +=
              v1 * std::conj(out.state.amp[base | (b2 << n)]);
      }
    }
  return out;
}

HdqiResult hdqi_run(const PauliHamiltonian& h, const UniPoly& poly,
                    const DecoderFactory& make_decoder, PilotMode mode,
                    std::optional<FaultSpec> fault, std::size_t component_cap) {
  std::size_t ell = poly.degree();

  auto finish = [&](const PauliHamiltonian& target,
                    std::vector<double> amps) -> HdqiResult {
    SymplecticCode code = build_code(target);
    std::unique_ptr<Decoder> dec = make_decoder(code);
    if (fault && fault->epsilon > 0)
      dec = std::make_unique<FaultyDecoder>(std::move(dec), code, ell,
                                            fault->epsilon, fault->seed);
    return hdqi_run_amplitudes(target, std::move(amps), *dec);
  };

  if (mode == PilotMode::Dicke) {
    if (!h.is_commuting())
      throw std::invalid_argument("hdqi_run: dicke pilot requires a commuting Hamiltonian");
    SymmetricWeights sw = symmetric_weights(poly, h.m());
    std::vector<double> amps(std::size_t(1) << h.m(), 0.0);
    for (std::size_t y = 0; y < amps.size(); ++y) {
      std::size_t w = std::size_t(std::popcount(uint64_t(y)));
      if (w < sw.w.size()) amps[y] = sw.w[w];
    }
    return finish(h, std::move(amps));
  }

  if (mode == PilotMode::GeneralMps) {
    PilotMPS mps(h, poly, component_cap);
    std::vector<double> amps(std::size_t(1) << h.m(), 0.0);
    for (std::size_t y = 0; y < amps.size(); ++y) {
      BitVec yv(h.m());
      for (std::size_t i = 0; i < h.m(); ++i)
        if ((y >> i) & 1) yv.set(i, true);
      amps[y] = mps.amplitude(yv);
    }
    return finish(h, std::move(amps));
  }

  // Blockwise: eliminate the product relations, expand over the independent
  // terms, and decode the dimension-0 reduced code.
  if (!h.is_commuting())
    throw std::invalid_argument("hdqi_run: blockwise pilot requires a commuting Hamiltonian");
  SymplecticCode code = build_code(h);
  std::vector<Relation> rels = relations_from_hamiltonian(h, code);
  BlockExpansion bx = blockwise_expand(poly, h.m(), rels);

  PauliHamiltonian reduced;
  reduced.n = h.n;
  for (std::size_t i : bx.free_vars) reduced.terms.push_back(h.terms[i]);
  std::size_t d = bx.free_vars.size();
  std::vector<double> amps(std::size_t(1) << d, 0.0);
  std::vector<bool> y(d, false);
  for (std::size_t pat = 0; pat < amps.size(); ++pat) {
    for (std::size_t i = 0; i < d; ++i) y[i] = (pat >> i) & 1;
    amps[pat] = bx.gamma_at(bx.pattern_counts(y));
  }
  return finish(reduced, std::move(amps));
}

}  // namespace hdqi

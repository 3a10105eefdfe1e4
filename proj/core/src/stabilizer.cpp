#include "hdqi/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace hdqi {

bool StabilizerTableau::is_valid() const {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].n != n || (signs[i] != 1 && signs[i] != -1)) return false;
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!commutes(gens[i], gens[j])) return false;
  }
  RowBasis basis(2 * n);
  for (const auto& g : gens)
    if (!basis.insert(symp(g))) return false;
  return true;
}

std::string StabilizerTableau::to_jsonl() const {
  nlohmann::json j;
  j["n"] = n;
  auto arr = nlohmann::json::array();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    BitVec v = symp(gens[i]);
    std::string hex;
    for (std::size_t b = 0; b < 2 * n; b += 4) {
      int nib = 0;
      for (std::size_t k = 0; k < 4 && b + k < 2 * n; ++k)
        if (v.get(b + k)) nib |= 1 << k;
      hex.push_back("0123456789abcdef"[nib]);
    }
    arr.push_back({{"symp", hex}, {"sign", signs[i]}});
  }
  j["generators"] = std::move(arr);
  return j.dump();
}

StabilizerTableau StabilizerTableau::from_jsonl(const std::string& line) {
  auto j = nlohmann::json::parse(line);
  StabilizerTableau t;
  t.n = j.at("n").get<std::size_t>();
  for (const auto& g : j.at("generators")) {
    std::string hex = g.at("symp").get<std::string>();
    BitVec v(2 * t.n);
    for (std::size_t pos = 0; pos < hex.size(); ++pos) {
      int nib = hex[pos] <= '9' ? hex[pos] - '0' : hex[pos] - 'a' + 10;
      for (std::size_t k = 0; k < 4 && 4 * pos + k < 2 * t.n; ++k)
        if (nib & (1 << k)) v.set(4 * pos + k, true);
    }
    t.gens.push_back(from_symp(v));
    t.signs.push_back(g.at("sign").get<int>());
  }
  return t;
}

int stabilizer_expectation(const StabilizerTableau& t, const PauliWord& p) {
  SolveTracker tracker(2 * t.n, t.gens.size());
  for (const auto& g : t.gens) tracker.insert(symp(g));
  auto combo = tracker.express(symp(p));
  if (!combo) return 0;
  // ordered product of the selected signed generators
  Phase ph;
  PauliWord prod(t.n);
  int sign = 1;
  auto idxs = combo->ones();
  for (std::size_t pos = idxs.size(); pos-- > 0;) {
    auto [p2, w2] = mul(t.gens[idxs[pos]], prod);
    ph = p2 * ph;
    prod = std::move(w2);
    sign *= t.signs[idxs[pos]];
  }
  if (prod != p || !ph.is_real())
    throw std::logic_error("stabilizer_expectation: inconsistent membership solve");
  return sign * ph.sign();
}

double stabilizer_energy(const StabilizerTableau& t, const PauliHamiltonian& h) {
  double e = 0;
  for (const auto& term : h.terms)
    e += double(term.sign) * double(stabilizer_expectation(t, term.word));
  return e;
}

void conjugate_in_place(const CliffordGate& g, PauliWord& w, int& sign) {
  switch (g.kind) {
    case CliffordGate::H: {
      bool x = w.x.get(g.a), z = w.z.get(g.a);
      if (x && z) sign = -sign;  // Y -> -Y
      w.x.set(g.a, z);
      w.z.set(g.a, x);
      break;
    }
    case CliffordGate::S: {
      bool x = w.x.get(g.a), z = w.z.get(g.a);
      if (x && z) sign = -sign;  // Y -> -X
      w.z.set(g.a, z ^ x);
      break;
    }
    case CliffordGate::Sdg: {
      bool x = w.x.get(g.a), z = w.z.get(g.a);
      if (x && !z) sign = -sign;  // X -> -Y
      w.z.set(g.a, z ^ x);
      break;
    }
    case CliffordGate::CX: {
      bool xc = w.x.get(g.a), zc = w.z.get(g.a);
      bool xt = w.x.get(g.b), zt = w.z.get(g.b);
      if (xc && zt && (xt == zc)) sign = -sign;
      w.x.set(g.b, xt ^ xc);
      w.z.set(g.a, zc ^ zt);
      break;
    }
    case CliffordGate::CZ: {
      // CZ = H_b CX(a->b) H_b
      CliffordGate hb{CliffordGate::H, g.b, 0};
      CliffordGate cx{CliffordGate::CX, g.a, g.b};
      conjugate_in_place(hb, w, sign);
      conjugate_in_place(cx, w, sign);
      conjugate_in_place(hb, w, sign);
      break;
    }
  }
}

std::pair<PauliWord, int> DiagonalizationResult::conjugate(const PauliWord& w,
                                                           int sign) const {
  PauliWord out = w;
  for (const auto& g : gates) conjugate_in_place(g, out, sign);
  return {out, sign};
}

DiagonalizationResult diagonalize_commuting(const PauliHamiltonian& h) {
  if (!h.is_commuting())
    throw std::invalid_argument("diagonalize_commuting: terms must pairwise commute");
  std::size_t n = h.n, m = h.m();
  std::vector<PauliWord> cur;
  std::vector<int> sign(m, 1);
  for (const auto& t : h.terms) cur.push_back(t.word);

  DiagonalizationResult res;
  auto emit = [&](CliffordGate g) {
    res.gates.push_back(g);
    for (std::size_t i = 0; i < m; ++i) conjugate_in_place(g, cur[i], sign[i]);
  };

  for (std::size_t j = 0; j < m; ++j) {
    if (cur[j].x.is_zero()) continue;
    // normalize every X/Y column of this term to a pure X
    for (std::size_t u : cur[j].x.ones())
      if (cur[j].z.get(u)) emit({CliffordGate::S, uint32_t(u), 0});
    auto xs = cur[j].x.ones();
    std::size_t q = xs[0];
    for (std::size_t pos = 1; pos < xs.size(); ++pos)
      emit({CliffordGate::CX, uint32_t(q), uint32_t(xs[pos])});
    // clear the remaining Z part
    for (std::size_t u : cur[j].z.ones()) {
      if (u == q) continue;
      emit({CliffordGate::CZ, uint32_t(q), uint32_t(u)});
    }
    if (cur[j].z.get(q)) emit({CliffordGate::S, uint32_t(q), 0});
    emit({CliffordGate::H, uint32_t(q)});
  }

  res.a_vectors.reserve(m);
  res.folded_signs.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!cur[i].x.is_zero())
      throw std::logic_error("diagonalize_commuting: residual X support");
    res.a_vectors.push_back(cur[i].z);
    res.folded_signs[i] = h.terms[i].sign * sign[i];
  }
  // symplectic action: columns are images of the basis generators
  res.symplectic = BitMatrix(2 * n, 2 * n);
  for (std::size_t c = 0; c < 2 * n; ++c) {
    PauliWord bw(n);
    if (c < n) bw.x.set(c, true); else bw.z.set(c - n, true);
    int s = 1;
    for (const auto& g : res.gates) conjugate_in_place(g, bw, s);
    BitVec img = symp(bw);
    for (std::size_t r : img.ones()) res.symplectic.set(r, c, true);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Clifford simulated annealing in the conjugated frame.

namespace {

// local Pauli encoding: 0 = I, 1 = X, 2 = Y, 3 = Z
struct SignedLetter {
  uint8_t p;
  int8_t s;
};

struct LocalClifford {
  // images[p-1] = c p c^dagger for p in {X, Y, Z}
  SignedLetter images[3];
};

struct CliffordTables {
  std::vector<LocalClifford> cliffords;  // 24 entries
  std::vector<int> inverse;              // index of c^{-1}

  static const CliffordTables& instance() {
    static CliffordTables t = build();
    return t;
  }

 private:
  static CliffordTables build() {
    CliffordTables t;
    // enumerate image pairs (X -> s1 p1, Z -> s2 p2), p1 != p2
    const uint8_t letters[3] = {1, 2, 3};
    for (uint8_t p1 : letters)
      for (uint8_t p2 : letters) {
        if (p1 == p2) continue;
        for (int s1 : {1, -1})
          for (int s2 : {1, -1}) {
            LocalClifford c;
            c.images[0] = {p1, int8_t(s1)};
            c.images[2] = {p2, int8_t(s2)};
            // Y = i X Z: image(Y) = i * image(X) image(Z)
            c.images[1] = mul_letters(c.images[0], c.images[2]);
            t.cliffords.push_back(c);
          }
      }
    t.inverse.resize(t.cliffords.size());
    for (std::size_t a = 0; a < t.cliffords.size(); ++a) {
      for (std::size_t b = 0; b < t.cliffords.size(); ++b) {
        if (is_inverse(t.cliffords[a], t.cliffords[b])) {
          t.inverse[a] = int(b);
          break;
        }
      }
    }
    return t;
  }

  static SignedLetter mul_letters(SignedLetter a, SignedLetter b) {
    // i * (sa pa) (sb pb) for single-qubit hermitian paulis
    // pa pb = i^e p; with Y = i X Z the product table:
    static const int eps[4][4] = {{0, 0, 0, 0},
                                  {0, 0, 1, 3},
                                  {0, 3, 0, 1},
                                  {0, 1, 3, 0}};
    static const uint8_t prod[4][4] = {{0, 1, 2, 3},
                                       {1, 0, 3, 2},
                                       {2, 3, 0, 1},
                                       {3, 2, 1, 0}};
    uint8_t p = prod[a.p][b.p];
    int e = eps[a.p][b.p] + 1;  // the extra i from Y = iXZ
    int s = a.s * b.s;
    e &= 3;
    if (e == 2) s = -s;
    if (e & 1) throw std::logic_error("clifford table: non-real image");
    return {p, int8_t(s)};
  }

  static bool is_inverse(const LocalClifford& a, const LocalClifford& b) {
    // (a after b) must be identity on X and Z
    for (int p : {0, 2}) {
      SignedLetter u = b.images[p];
      SignedLetter v = a.images[u.p - 1];
      if (v.p != uint8_t(p + 1) || v.s * u.s != 1) return false;
    }
    return true;
  }
};

}  // namespace

SaResult clifford_sa(const PauliHamiltonian& h, std::size_t steps,
                     SaSchedule sched, uint64_t seed) {
  const auto& tables = CliffordTables::instance();
  const std::size_t n = h.n, m = h.m();

  // sparse term structure
  struct TermRef {
    uint32_t term;
    uint8_t letter;  // base letter at this qubit, 1..3
  };
  std::vector<std::vector<TermRef>> at_qubit(n);
  std::vector<std::vector<uint32_t>> term_qubits(m);
  for (std::size_t i = 0; i < m; ++i) {
    const PauliWord& w = h.terms[i].word;
    for (std::size_t q = 0; q < n; ++q) {
      uint8_t p = w.x.get(q) ? (w.z.get(q) ? 2 : 1) : (w.z.get(q) ? 3 : 0);
      if (p) {
        at_qubit[q].push_back({uint32_t(i), p});
        term_qubits[i].push_back(uint32_t(q));
      }
    }
  }

  SaResult best_overall;
  best_overall.best_energy = -1e300;

  for (std::size_t restart = 0; restart < sched.restarts; ++restart) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + restart + 1);

    // frame[q].images = u_q^dagger p u_q for p in {X,Y,Z}; start at identity
    std::vector<LocalClifford> frame(n);
    for (auto& f : frame)
      f = LocalClifford{{{1, 1}, {2, 1}, {3, 1}}};

    // per-term: number of non-Z conjugated letters, product of letter signs
    std::vector<uint16_t> nondiag(m, 0);
    std::vector<int8_t> sgn(m, 1);
    double energy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (uint32_t q : term_qubits[i]) {
        uint8_t p = 0;
        for (const auto& tr : at_qubit[q])
          if (tr.term == i) { p = tr.letter; break; }
        const SignedLetter& img = frame[q].images[p - 1];
        if (img.p != 3) ++nondiag[i];
        sgn[i] *= img.s;
      }
      if (nondiag[i] == 0) energy += double(h.terms[i].sign) * double(sgn[i]);
    }

    double cur_best = energy;
    std::vector<LocalClifford> cur_best_frame = frame;
    double log_ratio = std::log(sched.t_lo / sched.t_hi);

    struct Saved {
      uint32_t term;
      uint16_t nondiag;
      int8_t sgn;
    };
    std::vector<Saved> saved;

    for (std::size_t step = 0; step < steps; ++step) {
      double T = sched.t_hi * std::exp(log_ratio * double(step) / double(steps));
      std::size_t q = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
      std::size_t c = std::uniform_int_distribution<std::size_t>(0, 23)(rng);
      int cinv = tables.inverse[c];

      // new frame at q: p -> frame[q][ (c^{-1} p c)",  ] with sign
      LocalClifford nf;
      for (int p = 0; p < 3; ++p) {
        SignedLetter mid = tables.cliffords[std::size_t(cinv)].images[p];
        SignedLetter fin = frame[q].images[mid.p - 1];
        nf.images[p] = {fin.p, int8_t(mid.s * fin.s)};
      }

      saved.clear();
      double dE = 0;
      for (const auto& tr : at_qubit[q]) {
        uint32_t i = tr.term;
        saved.push_back({i, nondiag[i], sgn[i]});
        const SignedLetter& oldimg = frame[q].images[tr.letter - 1];
        const SignedLetter& newimg = nf.images[tr.letter - 1];
        double before = (nondiag[i] == 0) ? double(h.terms[i].sign) * double(sgn[i]) : 0.0;
        if (oldimg.p != 3) --nondiag[i];
        if (newimg.p != 3) ++nondiag[i];
        sgn[i] = int8_t(sgn[i] * oldimg.s * newimg.s);
        double after = (nondiag[i] == 0) ? double(h.terms[i].sign) * double(sgn[i]) : 0.0;
        dE += after - before;
      }
      bool accept = dE >= 0;
      if (!accept) {
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        accept = u < std::exp(dE / T);
      }
      if (accept) {
        frame[q] = nf;
        energy += dE;
        if (energy > cur_best) {
          cur_best = energy;
          cur_best_frame = frame;
        }
      } else {
        for (const auto& sv : saved) {
          nondiag[sv.term] = sv.nondiag;
          sgn[sv.term] = sv.sgn;
        }
      }
      if (restart == 0 && (step % std::max<std::size_t>(1, steps / 256) == 0))
        best_overall.trace.emplace_back(step, energy);
    }

    if (cur_best > best_overall.best_energy) {
      best_overall.best_energy = cur_best;
      // tableau rows: u_q Z u_q^dagger, read off by inverting the frame map
      StabilizerTableau t;
      t.n = n;
      for (std::size_t q = 0; q < n; ++q) {
        int found = -1, fs = 1;
        for (int p = 0; p < 3; ++p)
          if (cur_best_frame[q].images[p].p == 3) {
            found = p;
            fs = cur_best_frame[q].images[p].s;
            break;
          }
        PauliWord w(n);
        w.set_letter(q, "XYZ"[found]);
        t.gens.push_back(std::move(w));
        t.signs.push_back(fs);
      }
      best_overall.best_state = std::move(t);
    }
  }
  // ratio reported as the term-agreement fraction
  best_overall.approximation_ratio = 0.5 * (best_overall.best_energy / double(m) + 1.0);
  return best_overall;
}

}  // namespace hdqi

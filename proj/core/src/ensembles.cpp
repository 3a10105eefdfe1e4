#include "hdqi/ensembles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "hdqi/code.hpp"
#include "hdqi/dequant.hpp"

namespace hdqi {

PauliHamiltonian greedy_commuting(std::size_t n, std::size_t k, std::size_t m,
                                  uint64_t seed, std::size_t rejection_cap) {
  if (k == 0 || k > n) throw std::invalid_argument("greedy_commuting: need 1 <= k <= n");
  std::mt19937_64 rng(seed);
  PauliHamiltonian h;
  h.n = n;

  // accepted terms kept sparse: sorted (qubit, letter) lists
  struct Sparse {
    std::vector<std::pair<uint32_t, uint8_t>> sup;  // letter 1=X 2=Y 3=Z
  };
  std::vector<Sparse> accepted;
  std::vector<std::vector<uint32_t>> at_qubit(n);
  std::unordered_set<PauliWord, PauliWord::Hash> dedup;
  std::vector<uint32_t> scratch_terms;
  std::vector<long long> stamp(m, -1);
  long long candidate_tick = 0;

  std::size_t rejections = 0;
  std::vector<uint32_t> qubits(n);
  std::iota(qubits.begin(), qubits.end(), 0u);

  while (h.terms.size() < m) {
    // random weight-k word
    Sparse cand;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + std::size_t(rng() % (n - i));
      std::swap(qubits[i], qubits[j]);
      cand.sup.emplace_back(qubits[i], uint8_t(1 + rng() % 3));
    }
    std::sort(cand.sup.begin(), cand.sup.end());

    // commutation against overlapping accepted terms
    scratch_terms.clear();
    long long tick = candidate_tick++;
    bool ok = true;
    for (auto [q, letter] : cand.sup) {
      (void)letter;
      for (uint32_t t : at_qubit[q])
        if (stamp[t] != tick) {
          stamp[t] = tick;
          scratch_terms.push_back(t);
        }
    }
    for (uint32_t t : scratch_terms) {
      int anti = 0;
      const auto& other = accepted[t].sup;
      std::size_t i = 0, j = 0;
      while (i < cand.sup.size() && j < other.size()) {
        if (cand.sup[i].first < other[j].first) ++i;
        else if (cand.sup[i].first > other[j].first) ++j;
        else {
          if (cand.sup[i].second != other[j].second) anti ^= 1;
          ++i;
          ++j;
        }
      }
      if (anti) {
        ok = false;
        break;
      }
    }
    if (ok) {
      PauliWord w(n);
      static const char letters[4] = {'I', 'X', 'Y', 'Z'};
      for (auto [q, letter] : cand.sup) w.set_letter(q, letters[letter]);
      if (dedup.count(w)) ok = false;
      if (ok) {
        dedup.insert(w);
        uint32_t id = uint32_t(h.terms.size());
        for (auto [q, letter] : cand.sup) at_qubit[q].push_back(id);
        accepted.push_back(std::move(cand));
        h.terms.push_back({(rng() & 1) ? 1 : -1, std::move(w)});
        continue;
      }
    }
    if (++rejections > rejection_cap)
      throw std::runtime_error("greedy_commuting: rejection cap exceeded");
  }
  return h;
}

namespace {

// uniformly random (a, b)-regular support matrix by the configuration model,
// full resample on multi-edges
std::vector<std::vector<uint32_t>> regular_supports(std::size_t n, std::size_t m,
                                                    std::size_t a, std::size_t b,
                                                    std::mt19937_64& rng,
                                                    std::size_t resample_cap) {
  if (m * a != n * b)
    throw std::invalid_argument("spin_glass: need m*a == n*b for (a,b)-regularity");
  std::vector<uint32_t> stubs(m * a);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t s = 0; s < b; ++s) stubs[q * b + s] = uint32_t(q);
  for (std::size_t attempt = 0; attempt < resample_cap; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<std::vector<uint32_t>> cols(m);
    bool clean = true;
    for (std::size_t c = 0; c < m && clean; ++c) {
      cols[c].assign(stubs.begin() + long(c * a), stubs.begin() + long((c + 1) * a));
      std::sort(cols[c].begin(), cols[c].end());
      for (std::size_t i = 1; i < a; ++i)
        if (cols[c][i] == cols[c][i - 1]) {
          clean = false;
          break;
        }
    }
    if (clean) return cols;
  }
  throw std::runtime_error("spin_glass: resample cap exceeded (multi-edges persisted)");
}

}  // namespace

PauliHamiltonian SparseSpinGlass::to_hamiltonian() const {
  PauliHamiltonian h;
  h.n = n;
  h.terms.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    PauliWord w(n);
    for (uint32_t q : supports[i]) w.set_letter(q, x_type[i] ? 'X' : 'Z');
    h.terms.push_back({signs[i], std::move(w)});
  }
  return h;
}

SparseSpinGlass spin_glass_sparse(std::size_t n, std::size_t a, std::size_t b,
                                  double p, uint64_t seed, std::size_t resample_cap) {
  if (p < 0 || p > 1) throw std::invalid_argument("spin_glass: p in [0,1]");
  std::mt19937_64 rng(seed);
  SparseSpinGlass g;
  g.n = n;
  g.m = n * b / a;
  g.supports = regular_supports(n, g.m, a, b, rng, resample_cap);
  g.x_type.resize(g.m);
  g.signs.resize(g.m);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < g.m; ++i) g.x_type[i] = unit(rng) < p ? 1 : 0;
  for (std::size_t i = 0; i < g.m; ++i) g.signs[i] = (rng() & 1) ? 1 : -1;
  return g;
}

PauliHamiltonian spin_glass(std::size_t n, std::size_t a, std::size_t b, double c,
                            double p, uint64_t seed) {
  std::size_t m = std::size_t(std::llround(c * double(n)));
  if (std::abs(c * double(n) - double(m)) > 1e-9)
    throw std::invalid_argument("spin_glass: m = c*n must be integral");
  if (m * a != n * b)
    throw std::invalid_argument("spin_glass: need m*a == n*b");
  return spin_glass_sparse(n, a, b, p, seed).to_hamiltonian();
}

PauliHamiltonian ising_ring(std::size_t L) {
  if (L < 2) throw std::invalid_argument("ising_ring: L >= 2");
  PauliHamiltonian h;
  h.n = L;
  for (std::size_t i = 0; i < L; ++i) {
    PauliWord w(L);
    w.set_letter(i, 'Z');
    w.set_letter((i + 1) % L, 'Z');
    h.terms.push_back({-1, std::move(w)});
  }
  return h;
}

PauliHamiltonian toric_code(std::size_t L) {
  if (L < 2) throw std::invalid_argument("toric_code: L >= 2");
  // qubits on edges: horizontal edge (x,y) -> y*L + x, vertical -> L^2 + y*L + x
  auto he = [L](std::size_t x, std::size_t y) { return (y % L) * L + (x % L); };
  auto ve = [L](std::size_t x, std::size_t y) { return L * L + (y % L) * L + (x % L); };
  PauliHamiltonian h;
  h.n = 2 * L * L;
  for (std::size_t y = 0; y < L; ++y)
    for (std::size_t x = 0; x < L; ++x) {
      PauliWord star(h.n);  // X on the four edges meeting vertex (x, y)
      star.set_letter(he(x, y), 'X');
      star.set_letter(he(x + L - 1, y), 'X');
      star.set_letter(ve(x, y), 'X');
      star.set_letter(ve(x, y + L - 1), 'X');
      h.terms.push_back({-1, std::move(star)});
    }
  for (std::size_t y = 0; y < L; ++y)
    for (std::size_t x = 0; x < L; ++x) {
      PauliWord plaq(h.n);  // Z on the boundary of plaquette (x, y)
      plaq.set_letter(he(x, y), 'Z');
      plaq.set_letter(he(x, y + 1), 'Z');
      plaq.set_letter(ve(x, y), 'Z');
      plaq.set_letter(ve(x + 1, y), 'Z');
      h.terms.push_back({-1, std::move(plaq)});
    }
  return h;
}

PauliHamiltonian cluster_graph(std::size_t L,
                               const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
  PauliHamiltonian h;
  h.n = L;
  std::vector<std::vector<uint32_t>> nbr(L);
  for (auto [u, v] : edges) {
    nbr[u].push_back(v);
    nbr[v].push_back(u);
  }
  for (std::size_t v = 0; v < L; ++v) {
    PauliWord w(L);
    w.set_letter(v, 'X');
    for (uint32_t u : nbr[v]) w.set_letter(u, 'Z');
    h.terms.push_back({-1, std::move(w)});
  }
  return h;
}

PauliHamiltonian cluster_ring(std::size_t L) {
  if (L < 3) throw std::invalid_argument("cluster_ring: L >= 3");
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (std::size_t i = 0; i < L; ++i)
    edges.emplace_back(uint32_t(i), uint32_t((i + 1) % L));
  return cluster_graph(L, edges);
}

PauliHamiltonian independent_z(std::size_t m) {
  PauliHamiltonian h;
  h.n = m;
  for (std::size_t i = 0; i < m; ++i) {
    PauliWord w(m);
    w.set_letter(i, 'Z');
    h.terms.push_back({1, std::move(w)});
  }
  return h;
}

DefectRule defect_random_in_support() {
  return [](const SignedTerm& t, std::mt19937_64& rng) {
    auto sup = t.word.x.ones();
    for (std::size_t q : t.word.z.ones()) sup.push_back(q);
    std::sort(sup.begin(), sup.end());
    sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
    if (sup.empty()) return t;
    std::size_t q = sup[rng() % sup.size()];
    PauliWord single = PauliWord::single(t.word.n, q, "XYZ"[rng() % 3]);
    auto [ph, w] = mul(single, t.word);
    (void)ph;  // defects are phase-free modifications of the support
    SignedTerm out;
    out.sign = t.sign;
    out.word = std::move(w);
    return out;
  };
}

DefectRule defect_z_to_x() {
  return [](const SignedTerm& t, std::mt19937_64&) {
    SignedTerm out;
    out.sign = t.sign;
    out.word = PauliWord(t.word.n, t.word.z, t.word.x);  // swap X and Z parts
    return out;
  };
}

PauliHamiltonian defect_apply(const PauliHamiltonian& h, double p,
                              const DefectRule& rule, uint64_t seed) {
  if (p < 0 || p > 1) throw std::invalid_argument("defect_apply: p in [0,1]");
  std::mt19937_64 rng(seed);
  PauliHamiltonian out;
  out.n = h.n;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& t : h.terms)
    out.terms.push_back(unit(rng) < p ? rule(t, rng) : t);
  // no new independent relations: every kernel vector of the defected code
  // must already be a relation of the original code
  SymplecticCode before = build_code(h);
  SymplecticCode after = build_code(out);
  if (after.dimension > before.dimension)
    throw std::runtime_error("defect_apply: defect created new relations");
  RowBasis old_kernel(h.m());
  for (const auto& v : before.check.bits.kernel_basis()) old_kernel.insert(v);
  for (const auto& v : after.check.bits.kernel_basis())
    if (!old_kernel.in_span(v))
      throw std::runtime_error("defect_apply: defect created new relations");
  return out;
}

ComponentStats component_stats(const AnticommGraph& g) {
  ComponentStats st;
  st.nodes = g.m;
  for (const auto& a : g.adj) st.edges += a.size();
  st.edges /= 2;
  std::vector<std::size_t> sizes;
  for (const auto& c : g.components) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  for (std::size_t i = 0; i < sizes.size();) {
    std::size_t j = i;
    while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
    st.histogram.emplace_back(sizes[i], j - i);
    i = j;
  }
  st.max_size = sizes.empty() ? 0 : sizes.back();
  return st;
}

namespace {

struct UnionFind {
  std::vector<uint32_t> parent, size;
  explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  uint32_t find(uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    return true;
  }
};

}  // namespace

std::vector<ComponentStats> component_experiment_spin_glass(
    std::size_t n, std::size_t a, std::size_t b, double p, std::size_t trials,
    uint64_t seed) {
  std::vector<ComponentStats> out;
  for (std::size_t t = 0; t < trials; ++t) {
    SparseSpinGlass g = spin_glass_sparse(n, a, b, p, seed * 0x9e3779b97f4a7c15ull + t);
    // anticommutation: mixed-type pairs with odd support overlap
    std::vector<std::vector<uint32_t>> at_qubit(n);
    for (std::size_t i = 0; i < g.m; ++i)
      for (uint32_t q : g.supports[i]) at_qubit[q].push_back(uint32_t(i));
    UnionFind uf(g.m);
    std::size_t edges = 0;
    std::vector<uint32_t> overlap(g.m, 0);
    std::vector<uint32_t> touched;
    for (std::size_t i = 0; i < g.m; ++i) {
      touched.clear();
      for (uint32_t q : g.supports[i])
        for (uint32_t j : at_qubit[q]) {
          if (j <= i) continue;
          if (g.x_type[j] == g.x_type[i]) continue;
          if (overlap[j] == 0) touched.push_back(j);
          ++overlap[j];
        }
      for (uint32_t j : touched) {
        if (overlap[j] & 1) {
          ++edges;
          uf.unite(uint32_t(i), j);
        }
        overlap[j] = 0;
      }
    }
    ComponentStats st;
    st.nodes = g.m;
    st.edges = edges;
    std::vector<std::size_t> comp_size;
    std::vector<int> root_index(g.m, -1);
    for (uint32_t v = 0; v < g.m; ++v) {
      uint32_t r = uf.find(v);
      if (root_index[r] < 0) {
        root_index[r] = int(comp_size.size());
        comp_size.push_back(0);
      }
      ++comp_size[std::size_t(root_index[r])];
    }
    std::sort(comp_size.begin(), comp_size.end());
    for (std::size_t i = 0; i < comp_size.size();) {
      std::size_t j = i;
      while (j < comp_size.size() && comp_size[j] == comp_size[i]) ++j;
      st.histogram.emplace_back(comp_size[i], j - i);
      i = j;
    }
    st.max_size = comp_size.empty() ? 0 : comp_size.back();
    out.push_back(std::move(st));
  }
  return out;
}

double semicircle_predict(std::size_t ell, std::size_t m) {
  double r = double(ell) / double(m);
  if (r >= 0.5) return 1.0;
  double s = std::sqrt(r / 2.0) + std::sqrt(0.5 - r / 2.0);
  return s * s;
}

SemicircleWeights optimal_semicircle_weights(std::size_t ell, std::size_t m) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(Eigen::Index(ell + 1), Eigen::Index(ell + 1));
  for (std::size_t j = 0; j < ell; ++j) {
    double v = std::sqrt(double(j + 1) * double(m - j));
    A(Eigen::Index(j), Eigen::Index(j + 1)) = v;
    A(Eigen::Index(j + 1), Eigen::Index(j)) = v;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  Eigen::Index top = Eigen::Index(ell);
  SemicircleWeights out;
  out.lambda_max = es.eigenvalues()(top);
  Eigen::VectorXd u = es.eigenvectors().col(top);
  out.w.resize(ell + 1);
  // u_j = w_j sqrt(C(m, j))
  long double logc = 0;
  for (std::size_t j = 0; j <= ell; ++j) {
    out.w[j] = double(u(Eigen::Index(j)) / std::sqrt(std::exp(double(logc))));
    logc += std::log((long double)(m - j) / (long double)(j + 1));
  }
  return out;
}

SemicircleMeasurement semicircle_experiment(const PauliHamiltonian& h,
                                            std::size_t ell, std::size_t samples,
                                            uint64_t seed) {
  if (!h.is_commuting())
    throw std::invalid_argument("semicircle_experiment: commuting H required");
  std::size_t m = h.m();
  SemicircleWeights sw = optimal_semicircle_weights(ell, m);

  // degeneracies of the weight classes from the commuting structure
  CommutingStructure cs = commuting_structure(h);
  std::size_t k = cs.deps.size();
  std::vector<uint32_t> cols(m, 0);
  uint32_t target = 0;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t pos : cs.deps[j].positions)
      cols[cs.independent[pos]] |= (1u << j);
    cols[cs.deps[j].term] |= (1u << j);
    if (cs.deps[j].sign < 0) target |= (1u << j);
  }
  CosetTable table(cols, k, m);

  // pilot value per weight class: V(w) = sum_j w_j K_j(w; m), Krawtchouk K
  std::vector<long double> value(m + 1, 0.0L);
  for (std::size_t w = 0; w <= m; ++w) {
    long double v = 0;
    for (std::size_t j = 0; j <= ell; ++j) {
      // K_j(w) = sum_t (-1)^t C(w, t) C(m - w, j - t)
      BigInt kj = 0;
      for (std::size_t t = 0; t <= std::min(j, w); ++t) {
        BigInt term = big_binomial(unsigned(w), unsigned(t)) *
                      big_binomial(unsigned(m - w), unsigned(j - t));
        if (t & 1) kj -= term; else kj += term;
      }
      v += (long double)sw.w[j] * kj.convert_to<long double>();
    }
    value[w] = v;
  }

  std::vector<double> probs(m + 1, 0.0);
  long double total = 0, exact_num = 0;
  std::vector<long double> mass(m + 1, 0.0L);
  for (std::size_t w = 0; w <= m; ++w) {
    mass[w] = value[w] * value[w] * table.count(w, target).convert_to<long double>();
    total += mass[w];
    exact_num += (long double)(double(m) - 2.0 * double(w)) * mass[w];
  }
  if (!(total > 0)) throw std::runtime_error("semicircle_experiment: degenerate pilot");
  for (std::size_t w = 0; w <= m; ++w) probs[w] = double(mass[w] / total);

  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> dist(probs.begin(), probs.end());
  long double acc = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t w = dist(rng);
    acc += double(m) - 2.0 * double(w);
  }
  // reported in the units of the semicircle formula: the term-agreement
  // fraction (E/m + 1)/2, whose m -> infinity optimum is the closed form
  SemicircleMeasurement out;
  out.measured = 0.5 * (double(acc / (long double)samples / (long double)m) + 1.0);
  out.exact = 0.5 * (double(exact_num / total / (long double)m) + 1.0);
  out.predicted = semicircle_predict(ell, m);
  return out;
}

}  // namespace hdqi

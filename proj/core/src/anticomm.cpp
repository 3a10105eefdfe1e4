#include "hdqi/anticomm.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace hdqi {

bool AnticommGraph::has_edge(std::size_t i, std::size_t j) const {
  const auto& a = adj[i];
  return std::binary_search(a.begin(), a.end(), uint32_t(j));
}

std::size_t AnticommGraph::max_component_size() const {
  std::size_t mx = 0;
  for (const auto& c : components) mx = std::max(mx, c.size());
  return mx;
}

namespace {

std::vector<std::vector<uint32_t>> components_from_adj(
    std::size_t m, const std::vector<std::vector<uint32_t>>& adj) {
  std::vector<int> comp(m, -1);
  std::vector<std::vector<uint32_t>> out;
  for (std::size_t v = 0; v < m; ++v) {
    if (comp[v] >= 0) continue;
    int id = int(out.size());
    out.emplace_back();
    std::vector<uint32_t> stack{uint32_t(v)};
    comp[v] = id;
    while (!stack.empty()) {
      uint32_t u = stack.back();
      stack.pop_back();
      out[id].push_back(u);
      for (uint32_t w : adj[u])
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

}  // namespace

AnticommGraph AnticommGraph::from_adjacency(
    std::size_t m, const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
  AnticommGraph g;
  g.m = m;
  g.adj.resize(m);
  for (auto [a, b] : edges) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  for (auto& a : g.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  g.components = components_from_adj(m, g.adj);
  return g;
}

AnticommGraph anticomm_graph(const PauliHamiltonian& h) {
  std::size_t m = h.m();
  // candidate pairs via qubit incidence; terms with disjoint support commute
  std::vector<std::vector<uint32_t>> by_qubit(h.n);
  for (std::size_t i = 0; i < m; ++i) {
    const PauliWord& w = h.terms[i].word;
    for (std::size_t q = 0; q < h.n; ++q)
      if (w.x.get(q) || w.z.get(q)) by_qubit[q].push_back(uint32_t(i));
  }
  std::vector<std::pair<uint32_t, uint32_t>> seen;
  for (std::size_t q = 0; q < h.n; ++q) {
    const auto& lst = by_qubit[q];
    for (std::size_t a = 0; a < lst.size(); ++a)
      for (std::size_t b = a + 1; b < lst.size(); ++b)
        seen.emplace_back(lst[a], lst[b]);
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (auto [i, j] : seen)
    if (!commutes(h.terms[i].word, h.terms[j].word)) edges.emplace_back(i, j);
  return AnticommGraph::from_adjacency(m, edges);
}

int sgn_eval(const AnticommGraph& g, const std::vector<uint32_t>& sequence) {
  int sign = 1;
  for (std::size_t a = 0; a < sequence.size(); ++a)
    for (std::size_t b = a + 1; b < sequence.size(); ++b)
      if (sequence[a] > sequence[b] && g.has_edge(sequence[a], sequence[b]))
        sign = -sign;
  return sign;
}

namespace {

std::string mu_key(const CountVector& mu) {
  std::string s;
  s.reserve(mu.size());
  for (uint32_t v : mu) s.push_back(char(v));
  return s;
}

}  // namespace

BigInt AlphaTable::sigma(const CountVector& mu) {
  double cells = 1;
  for (uint32_t v : mu) cells *= double(v + 1);
  if (cells > double(budget_))
    throw std::invalid_argument("alpha_dp: N(mu) exceeds the memory budget");

  std::string key = mu_key(mu);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  std::size_t total = 0;
  for (uint32_t v : mu) total += v;
  if (total == 0) {
    memo_.emplace(std::move(key), BigInt(1));
    return 1;
  }
  BigInt acc = 0;
  CountVector next = mu;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    if (mu[j] == 0) continue;
    int par = 0;
    for (uint32_t i : g_->adj[j])
      if (i > j) par ^= int(mu[i] & 1);
    next[j] -= 1;
    BigInt sub = sigma(next);
    next[j] += 1;
    if (par) acc -= sub; else acc += sub;
  }
  memo_.emplace(std::move(key), acc);
  return acc;
}

Rational AlphaTable::alpha(const CountVector& mu) {
  BigInt s = sigma(mu);
  std::size_t total = 0;
  BigInt denom = 1;
  for (uint32_t v : mu) {
    total += v;
    denom *= big_factorial(v);
  }
  return Rational(s * denom, big_factorial(unsigned(total)));
}

Rational alpha_dp(const AnticommGraph& g, const CountVector& mu, std::size_t budget) {
  if (mu.size() != g.m) throw std::invalid_argument("alpha_dp: mu length != m");
  AlphaTable t(g, budget);
  return t.alpha(mu);
}

BigInt beta_eval(const AnticommGraph& g, std::size_t k, const BitVec& y,
                 std::size_t budget) {
  if (y.size() != g.m) throw std::invalid_argument("beta_eval: y length != m");
  std::size_t w = y.popcount();
  if (w > k || ((k - w) & 1)) return 0;
  std::size_t half = (k - w) / 2;
  std::size_t m = g.m;
  if (m == 0) return k == 0 ? 1 : 0;
  double count = 1;
  for (std::size_t i = 1; i < m; ++i) count = count * double(half + i) / double(i);
  if (count > double(budget))
    throw std::invalid_argument("beta_eval: composition count exceeds budget");

  AlphaTable table(g, budget);
  BigInt acc = 0;
  std::vector<uint32_t> base(m, 0);
  for (std::size_t i = 0; i < m; ++i) base[i] = y.get(i) ? 1 : 0;
  std::vector<uint32_t> nu(m, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                          std::size_t left) {
    if (pos + 1 == m) {
      nu[pos] = uint32_t(left);
      CountVector full(m);
      for (std::size_t i = 0; i < m; ++i) full[i] = base[i] + 2 * nu[i];
      acc += table.sigma(full);
      nu[pos] = 0;
      return;
    }
    for (std::size_t take = 0; take <= left; ++take) {
      nu[pos] = uint32_t(take);
      rec(pos + 1, left - take);
    }
    nu[pos] = 0;
  };
  rec(0, half);
  return acc;
}

PilotMPS::PilotMPS(const PauliHamiltonian& h, const UniPoly& poly,
                   std::size_t component_cap)
    : m_(h.m()), ell_(poly.degree()), coeffs_(poly.coeffs) {
  AnticommGraph g = anticomm_graph(h);
  comps_ = g.components;
  std::size_t D = ell_ + 1;
  double mem = 0;
  for (const auto& c : comps_) {
    if (c.size() > component_cap)
      throw std::invalid_argument(
          "pilot_mps_build: component size exceeds cap; preprocessing is "
          "n^O(M) and only the O(1)/O(log n) component regimes are feasible");
    mem += double(uint64_t(1) << c.size()) * double(D * D);
  }
  if (mem > 5e8)
    throw std::invalid_argument("pilot_mps_build: site matrices exceed memory budget");

  site_.resize(comps_.size());
  for (std::size_t t = 0; t < comps_.size(); ++t) {
    const auto& verts = comps_[t];
    std::size_t mt = verts.size();
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (std::size_t a = 0; a < mt; ++a)
      for (std::size_t b = a + 1; b < mt; ++b)
        if (g.has_edge(verts[a], verts[b])) edges.emplace_back(uint32_t(a), uint32_t(b));
    AnticommGraph sub = AnticommGraph::from_adjacency(mt, edges);

    site_[t].assign(std::size_t(1) << mt, std::vector<BigInt>(D * D, BigInt(0)));
    for (uint32_t pattern = 0; pattern < (uint32_t(1) << mt); ++pattern) {
      BitVec yt(mt);
      for (std::size_t b = 0; b < mt; ++b)
        if (pattern & (1u << b)) yt.set(b, true);
      std::size_t w = yt.popcount();
      for (std::size_t kappa = w; kappa <= ell_; ++kappa) {
        if ((kappa - w) & 1) continue;
        BigInt beta = beta_eval(sub, kappa, yt);
        if (beta == 0) continue;
        for (std::size_t kp = 0; kp + kappa <= ell_; ++kp) {
          std::size_t kn = kp + kappa;
          site_[t][pattern][kp * D + kn] = big_binomial(unsigned(kn), unsigned(kp)) * beta;
        }
      }
    }
  }
}

const BigInt& PilotMPS::site_entry(std::size_t t, uint32_t pattern,
                                   std::size_t K_prev, std::size_t K_next) const {
  std::size_t D = ell_ + 1;
  return site_[t][pattern][K_prev * D + K_next];
}

double PilotMPS::amplitude(const BitVec& y) const {
  std::size_t D = ell_ + 1;
  std::vector<BigInt> row(D, BigInt(0));
  row[0] = 1;
  for (std::size_t t = 0; t < comps_.size(); ++t) {
    uint32_t pattern = 0;
    for (std::size_t b = 0; b < comps_[t].size(); ++b)
      if (y.get(comps_[t][b])) pattern |= (1u << b);
    const auto& A = site_[t][pattern];
    std::vector<BigInt> next(D, BigInt(0));
    for (std::size_t i = 0; i < D; ++i) {
      if (row[i] == 0) continue;
      for (std::size_t j = 0; j < D; ++j)
        if (A[i * D + j] != 0) next[j] += row[i] * A[i * D + j];
    }
    row = std::move(next);
  }
  long double acc = 0;
  for (std::size_t k = 0; k < D && k < coeffs_.size(); ++k)
    acc += (long double)coeffs_[k] * row[k].convert_to<long double>();
  return double(acc);
}

double PilotMPS::norm_squared() const {
  std::size_t D = ell_ + 1;
  std::vector<BigInt> M(D * D, BigInt(0));
  M[0] = 1;
  for (std::size_t t = 0; t < comps_.size(); ++t) {
    std::vector<BigInt> next(D * D, BigInt(0));
    for (const auto& A : site_[t]) {
      std::vector<BigInt> MA(D * D, BigInt(0));
      for (std::size_t i = 0; i < D; ++i)
        for (std::size_t kk = 0; kk < D; ++kk) {
          if (M[i * D + kk] == 0) continue;
          for (std::size_t j = 0; j < D; ++j)
            if (A[kk * D + j] != 0) MA[i * D + j] += M[i * D + kk] * A[kk * D + j];
        }
      for (std::size_t i = 0; i < D; ++i)
        for (std::size_t kk = 0; kk < D; ++kk) {
          if (A[kk * D + i] == 0) continue;
          for (std::size_t j = 0; j < D; ++j)
            if (MA[kk * D + j] != 0) next[i * D + j] += A[kk * D + i] * MA[kk * D + j];
        }
    }
    M = std::move(next);
  }
  long double acc = 0;
  for (std::size_t i = 0; i < D && i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < D && j < coeffs_.size(); ++j)
      acc += (long double)coeffs_[i] * (long double)coeffs_[j] *
             M[i * D + j].convert_to<long double>();
  return double(acc);
}

std::string PilotMPS::to_json() const {
  nlohmann::json j;
  j["bond_dim"] = ell_ + 1;
  std::vector<double> vl(ell_ + 1, 0.0);
  vl[0] = 1.0;
  j["v_L"] = vl;
  j["v_R"] = coeffs_;
  j["normalization_sq"] = norm_squared();
  auto sites = nlohmann::json::array();
  std::size_t D = ell_ + 1;
  for (std::size_t t = 0; t < comps_.size(); ++t) {
    nlohmann::json st;
    st["vertices"] = comps_[t];
    auto mats = nlohmann::json::array();
    for (std::size_t pattern = 0; pattern < site_[t].size(); ++pattern) {
      nlohmann::json mat = nlohmann::json::array();
      for (std::size_t i = 0; i < D; ++i) {
        std::vector<std::string> rowtext;
        for (std::size_t jj = 0; jj < D; ++jj)
          rowtext.push_back(site_[t][pattern][i * D + jj].str());
        mat.push_back(rowtext);
      }
      mats.push_back(std::move(mat));
    }
    st["matrices"] = std::move(mats);
    sites.push_back(std::move(st));
  }
  j["sites"] = std::move(sites);
  return j.dump();
}

std::vector<double> pilot_amplitudes_bruteforce(const PauliHamiltonian& h,
                                                const UniPoly& poly) {
  std::size_t m = h.m();
  std::size_t ell = poly.degree();
  if (m > 10 || ell > 6)
    throw std::invalid_argument("pilot_amplitudes_bruteforce: m <= 10, ell <= 6 required");

  std::size_t patterns = std::size_t(1) << m;
  std::vector<Phase> canon_phase(patterns);
  std::vector<PauliWord> canon_word(patterns, PauliWord(h.n));
  std::vector<int> canon_vsign(patterns, 1);
  for (std::size_t y = 1; y < patterns; ++y) {
    std::size_t low = std::size_t(std::countr_zero(uint64_t(y)));
    std::size_t rest = y & (y - 1);
    auto [ph, w] = mul(h.terms[low].word, canon_word[rest]);
    canon_phase[y] = ph * canon_phase[rest];
    canon_word[y] = w;
    canon_vsign[y] = h.terms[low].sign * canon_vsign[rest];
  }

  std::vector<std::vector<BigInt>> sums(ell + 1, std::vector<BigInt>(patterns, BigInt(0)));
  sums[0][0] = 1;
  for (std::size_t k = 1; k <= ell; ++k) {
    std::vector<uint32_t> idx(k, 0);
    while (true) {
      Phase ph;
      PauliWord w(h.n);
      int vs = 1;
      std::size_t pattern = 0;
      for (std::size_t pos = k; pos-- > 0;) {
        auto [p2, w2] = mul(h.terms[idx[pos]].word, w);
        ph = p2 * ph;
        w = std::move(w2);
        vs *= h.terms[idx[pos]].sign;
        pattern ^= (std::size_t(1) << idx[pos]);
      }
      int rel = ((ph.e - canon_phase[pattern].e + 4) % 4 == 0) ? 1 : -1;
      rel *= vs * canon_vsign[pattern];
      sums[k][pattern] += rel;
      std::size_t pos = 0;
      while (pos < k && ++idx[pos] == m) {
        idx[pos] = 0;
        ++pos;
      }
      if (pos == k) break;
    }
  }
  std::vector<double> amp(patterns, 0.0);
  for (std::size_t k = 0; k <= ell && k < poly.coeffs.size(); ++k) {
    if (poly.coeffs[k] == 0.0 && k > 0) continue;
    for (std::size_t y = 0; y < patterns; ++y)
      if (sums[k][y] != 0) amp[y] += poly.coeffs[k] * to_double(sums[k][y]);
  }
  return amp;
}

}  // namespace hdqi

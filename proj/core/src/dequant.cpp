#include "hdqi/dequant.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdqi {

CosetTable::CosetTable(const std::vector<uint32_t>& columns, std::size_t k,
                       std::size_t w_max, std::size_t budget)
    : m_(columns.size()), k_(k), w_max_(w_max), cols_(columns) {
  if (k > 24) throw BudgetExceeded("coset table: 2^k too large");
  std::size_t cells = (w_max_ + 1) * (m_ + 1) * (std::size_t(1) << k_);
  if (cells > budget) throw BudgetExceeded("coset table: budget exceeded");
  table_.assign(cells, BigInt(0));
  table_[idx(0, m_, 0)] = 1;
  // N(w, i-1, x) = N(w, i, x) + N(w-1, i, x ^ h_i)
  for (std::size_t w = 0; w <= w_max_; ++w)
    for (std::size_t i = m_; i-- > 0;) {
      uint32_t hi = cols_[i];
      for (uint32_t x = 0; x < (uint32_t(1) << k_); ++x) {
        BigInt v = table_[idx(w, i + 1, x)];
        if (w > 0) v += table_[idx(w - 1, i + 1, x ^ hi)];
        table_[idx(w, i, x)] = std::move(v);
      }
    }
}

const BigInt& CosetTable::count(std::size_t w, std::size_t i, uint32_t x) const {
  return table_[idx(w, i, x)];
}

BitVec CosetTable::sample(std::size_t w, uint32_t z, std::mt19937_64& rng) const {
  if (count(w, 0, z) == 0)
    throw std::runtime_error("coset sample: empty coset");
  BitVec y(m_);
  std::size_t r = w;
  uint32_t x = z;
  for (std::size_t i = 0; i < m_; ++i) {
    const BigInt& n0 = count(r, i + 1, x);
    BigInt n1 = 0;
    if (r > 0) n1 = count(r - 1, i + 1, x ^ cols_[i]);
    double p1 = (n1 == 0) ? 0.0
                          : Rational(n1, n0 + n1).convert_to<double>();
    if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p1) {
      y.set(i, true);
      x ^= cols_[i];
      --r;
    }
  }
  return y;
}

BigInt coset_count(const std::vector<uint32_t>& columns, std::size_t k,
                   std::size_t w, uint32_t z) {
  CosetTable t(columns, k, w);
  return t.count(w, z);
}

CommutingStructure commuting_structure(const PauliHamiltonian& h) {
  if (!h.is_commuting())
    throw std::invalid_argument("commuting_structure: terms must pairwise commute");
  CommutingStructure cs;
  SolveTracker tracker(2 * h.n, h.m());
  std::vector<std::size_t> inserted;
  for (std::size_t i = 0; i < h.m(); ++i) {
    BitVec v = symp(h.terms[i].word);
    std::size_t before = tracker.rank();
    tracker.insert(v);
    if (tracker.rank() > before) {
      cs.independent.push_back(i);
      inserted.push_back(i);
      continue;
    }
    auto combo = tracker.express(v);
    if (!combo) throw std::logic_error("commuting_structure: dependent row not expressible");
    CommutingStructure::Dependency dep;
    dep.term = i;
    // combo slots are insertion order = term index; only independent terms
    // ever enter the basis, so every selected slot is an independent term
    Phase ph;
    PauliWord prod(h.n);
    int vsign = 1;
    std::vector<std::size_t> sel;
    for (std::size_t slot : combo->ones()) sel.push_back(slot);
    // multiply in increasing term order
    std::sort(sel.begin(), sel.end());
    for (std::size_t posi = sel.size(); posi-- > 0;) {
      std::size_t term_index = sel[posi];
      auto [p2, w2] = mul(h.terms[term_index].word, prod);
      ph = p2 * ph;
      prod = std::move(w2);
      vsign *= h.terms[term_index].sign;
    }
    for (std::size_t slot : sel) {
      auto it = std::lower_bound(cs.independent.begin(), cs.independent.end(), slot);
      if (it == cs.independent.end() || *it != slot)
        throw std::logic_error("commuting_structure: combo uses a dependent row");
      dep.positions.push_back(std::size_t(it - cs.independent.begin()));
    }
    if (prod != h.terms[i].word || !ph.is_real())
      throw std::logic_error("commuting_structure: bad dependency product");
    // signed product of the selected signed terms = dep.sign * (signed term i)
    dep.sign = vsign * ph.sign() * h.terms[i].sign;
    cs.deps.push_back(std::move(dep));
  }
  return cs;
}

SpectralSampleResult spectral_sample(const PauliHamiltonian& h,
                                     const std::function<double(double)>& f,
                                     std::size_t samples, uint64_t seed,
                                     std::size_t budget) {
  CommutingStructure cs = commuting_structure(h);
  std::size_t m = h.m();
  std::size_t k = cs.deps.size();
  if (k > 24) throw BudgetExceeded("spectral_sample: dim Symp(H) too large for the table");

  // check matrix over F2^k: for e = (y | t) with t determined by A y + u,
  // the constraint is [A | I] e = u. Column masks in original term order.
  std::vector<uint32_t> cols(m, 0);
  uint32_t target = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const auto& dep = cs.deps[j];
    for (std::size_t pos : dep.positions)
      cols[cs.independent[pos]] |= (1u << j);
    cols[dep.term] |= (1u << j);
    if (dep.sign < 0) target |= (1u << j);
  }

  CosetTable table(cols, k, m, budget);

  SpectralSampleResult out;
  out.degeneracy.resize(m + 1);
  out.exact_pw.assign(m + 1, 0.0);
  long double total = 0;
  std::vector<long double> weight_term(m + 1, 0.0L);
  for (std::size_t w = 0; w <= m; ++w) {
    out.degeneracy[w] = table.count(w, target);
    double fv = f(double(m) - 2.0 * double(w));
    if (fv < 0) throw std::invalid_argument("spectral_sample: f must be nonnegative");
    weight_term[w] = (long double)fv * out.degeneracy[w].convert_to<long double>();
    total += weight_term[w];
  }
  if (!(total > 0))
    throw std::invalid_argument("spectral_sample: f vanishes on the spectrum");
  for (std::size_t w = 0; w <= m; ++w)
    out.exact_pw[w] = double(weight_term[w] / total);

  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> wdist(out.exact_pw.begin(), out.exact_pw.end());
  out.tableaus.reserve(samples);
  out.weights.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t w = wdist(rng);
    BitVec e = table.sample(w, target, rng);
    out.weights.push_back(w);
    StabilizerTableau t;
    t.n = h.n;
    for (std::size_t pos = 0; pos < cs.independent.size(); ++pos) {
      std::size_t i = cs.independent[pos];
      // eigenvalue of the signed term z_i is (1 - 2 e_i); generator sign is
      // that eigenvalue folded with v_i so the stored generator is +-P_i
      int si = e.get(i) ? -1 : 1;
      t.gens.push_back(h.terms[i].word);
      t.signs.push_back(si * h.terms[i].sign);
    }
    out.tableaus.push_back(std::move(t));
  }
  return out;
}

}  // namespace hdqi

#include "hdqi/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

namespace hdqi {

LookupDecoder::LookupDecoder(const SymplecticCode& code, std::size_t ell,
                             std::size_t budget)
    : rows_(code.check.rows), m_(code.m), ell_(ell) {
  double entries = 0, c = 1;
  for (std::size_t j = 0; j <= ell; ++j) {
    entries += c;
    c = c * double(m_ - j) / double(j + 1);
  }
  if (entries > double(budget))
    throw BudgetExceeded("lookup_decoder: table budget exceeded");

  std::vector<BitVec> cols;
  for (std::size_t i = 0; i < m_; ++i) cols.push_back(code.check.bits.column(i));

  BitVec zero_err(m_), zero_syn(rows_);
  table_.emplace(zero_syn, zero_err);

  // Enumerate by increasing weight; first writer wins, so every stored
  // preimage has minimum weight.
  std::vector<std::size_t> pick;
  BitVec acc(rows_), err(m_);
  std::function<void(std::size_t, std::size_t, std::size_t)> rec =
      [&](std::size_t depth, std::size_t start, std::size_t w) {
        if (depth == w) {
          table_.emplace(acc, err);
          return;
        }
        for (std::size_t i = start; i + (w - depth) <= m_; ++i) {
          acc ^= cols[i];
          err.set(i, true);
          rec(depth + 1, i + 1, w);
          err.set(i, false);
          acc ^= cols[i];
        }
      };
  for (std::size_t w = 1; w <= ell; ++w) rec(0, 0, w);
}

DecodeResult LookupDecoder::decode(const BitVec& syndrome) const {
  auto it = table_.find(syndrome);
  if (it == table_.end()) return {DecodeResult::DetectedFailure, BitVec(m_)};
  return {DecodeResult::Decoded, it->second};
}

GeUniqueDecoder::GeUniqueDecoder(const SymplecticCode& code)
    : rows_(code.check.rows), m_(code.m), check_(code.check.bits) {
  // Row-echelonize B^T while tracking which original rows combine into each
  // pivot row; decoding solves by matching pivot columns.
  for (std::size_t r = 0; r < rows_; ++r) {
    BitVec row = code.check.bits.row(r);
    BitVec combo(rows_);
    combo.set(r, true);
    for (std::size_t i = 0; i < pivot_rows_.size(); ++i)
      if (row.get(std::size_t(pivot_cols_[i]))) {
        row ^= pivot_rows_[i];
        combo ^= row_combo_[i];
      }
    int lead = row.lowest_set();
    if (lead < 0) continue;
    pivot_rows_.push_back(std::move(row));
    row_combo_.push_back(std::move(combo));
    pivot_cols_.push_back(lead);
  }
}

DecodeResult GeUniqueDecoder::decode(const BitVec& syndrome) const {
  // Back-substitution: y supported on pivot columns only.
  BitVec y(m_);
  // rhs_i = <combo_i, syndrome> for each echelon row
  std::vector<char> rhs(pivot_rows_.size());
  for (std::size_t i = 0; i < pivot_rows_.size(); ++i)
    rhs[i] = BitVec::dot(row_combo_[i], syndrome);
  // echelon rows are upper triangular in pivot order; solve from the last
  for (std::size_t ii = pivot_rows_.size(); ii-- > 0;) {
    char v = rhs[ii];
    const BitVec& row = pivot_rows_[ii];
    for (std::size_t jj = ii + 1; jj < pivot_rows_.size(); ++jj)
      if (row.get(std::size_t(pivot_cols_[jj])) && y.get(std::size_t(pivot_cols_[jj])))
        v ^= 1;
    if (v) y.set(std::size_t(pivot_cols_[ii]), true);
  }
  if (check_.mul(y) != syndrome) return {DecodeResult::DetectedFailure, BitVec(m_)};
  return {DecodeResult::Decoded, y};
}

BpDecoder::BpDecoder(const SymplecticCode& code, BpParams params)
    : rows_(code.check.rows), m_(code.m), params_(params), check_(code.check.bits) {
  // Pruning: keep a minimum-weight row basis. Greedy insertion lowest weight
  // first (ties: smaller row index) = removing dependent checks highest
  // weight first (ties: larger row index).
  std::vector<uint32_t> order(rows_);
  std::iota(order.begin(), order.end(), 0u);
  std::vector<std::size_t> weight(rows_);
  for (std::size_t r = 0; r < rows_; ++r) weight[r] = code.check.row_weight(r);
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return weight[a] < weight[b];
  });
  RowBasis basis(m_);
  for (uint32_t r : order) {
    if (weight[r] == 0) continue;
    if (basis.insert(code.check.bits.row(r))) kept_rows_.push_back(r);
  }
  std::sort(kept_rows_.begin(), kept_rows_.end());

  // CSR for the pruned graph
  chk_off_.push_back(0);
  for (uint32_t r : kept_rows_) {
    for (std::size_t c : code.check.bits.row(r).ones()) chk_var_.push_back(uint32_t(c));
    chk_off_.push_back(uint32_t(chk_var_.size()));
  }
  std::vector<uint32_t> deg(m_, 0);
  for (uint32_t v : chk_var_) ++deg[v];
  var_off_.assign(m_ + 1, 0);
  for (std::size_t v = 0; v < m_; ++v) var_off_[v + 1] = var_off_[v] + deg[v];
  var_edge_.resize(chk_var_.size());
  std::vector<uint32_t> fill(var_off_.begin(), var_off_.end() - 1);
  for (uint32_t e = 0; e < chk_var_.size(); ++e)
    var_edge_[fill[chk_var_[e]]++] = e;
}

BitMatrix BpDecoder::pruned_matrix() const {
  BitMatrix pm(kept_rows_.size(), m_);
  for (std::size_t i = 0; i < kept_rows_.size(); ++i)
    for (uint32_t e = chk_off_[i]; e < chk_off_[i + 1]; ++e)
      pm.set(i, chk_var_[e], true);
  return pm;
}

DecodeResult BpDecoder::decode(const BitVec& syndrome) const {
  double p = params_.prior_flip_probability;
  if (p <= 0.0 || p >= 0.5) p = 0.01;
  return decode_with_prior(syndrome, p);
}

DecodeResult BpDecoder::decode_with_prior(const BitVec& full_syndrome,
                                          double prior) const {
  const std::size_t nc = kept_rows_.size();
  const std::size_t ne = chk_var_.size();
  std::vector<char> syn(nc);
  for (std::size_t i = 0; i < nc; ++i) syn[i] = full_syndrome.get(kept_rows_[i]);

  const double llr0 = std::log((1.0 - prior) / prior);
  std::vector<double> v2c(ne, llr0), c2v(ne, 0.0), total(m_);
  BitVec hard(m_);

  auto check_hard = [&]() {
    for (std::size_t i = 0; i < nc; ++i) {
      char s = 0;
      for (uint32_t e = chk_off_[i]; e < chk_off_[i + 1]; ++e)
        s ^= char(hard.get(chk_var_[e]));
      if (s != syn[i]) return false;
    }
    return true;
  };

  constexpr double kTanhClip = 0.9999999999999;
  for (int iter = 0; iter < params_.max_iters; ++iter) {
    // check update (flooding)
    for (std::size_t i = 0; i < nc; ++i) {
      uint32_t lo = chk_off_[i], hi = chk_off_[i + 1];
      double prod = syn[i] ? -1.0 : 1.0;
      bool zero = false;
      for (uint32_t e = lo; e < hi; ++e) {
        double t = std::tanh(0.5 * v2c[e]);
        if (t == 0.0) { zero = true; }
        prod *= std::clamp(t, -kTanhClip, kTanhClip);
      }
      for (uint32_t e = lo; e < hi; ++e) {
        double t = std::clamp(std::tanh(0.5 * v2c[e]), -kTanhClip, kTanhClip);
        double ex = zero ? 0.0 : prod / t;
        c2v[e] = 2.0 * std::atanh(std::clamp(ex, -kTanhClip, kTanhClip));
      }
    }
    // variable update
    for (std::size_t v = 0; v < m_; ++v) {
      double sum = llr0;
      for (uint32_t k = var_off_[v]; k < var_off_[v + 1]; ++k) sum += c2v[var_edge_[k]];
      total[v] = sum;
      for (uint32_t k = var_off_[v]; k < var_off_[v + 1]; ++k) {
        uint32_t e = var_edge_[k];
        v2c[e] = std::clamp(sum - c2v[e], -50.0, 50.0);
      }
      hard.set(v, sum < 0.0);
    }
    if (check_hard()) {
      // pruned checks passed; confirm against the full syndrome so that an
      // inconsistent input can never be reported as decoded
      if (check_.mul(hard) == full_syndrome) return {DecodeResult::Decoded, hard};
      return {DecodeResult::DetectedFailure, BitVec(m_)};
    }
  }
  return {DecodeResult::DetectedFailure, BitVec(m_)};
}

BitVec oracle_apply(const Decoder& dec, const BitVec& y, const BitVec& syndrome) {
  DecodeResult r = dec.decode(syndrome);
  BitVec out = y;
  if (r.status == DecodeResult::Decoded) out ^= r.error_vector;
  return out;
}

namespace {

BitVec random_weight_vector(std::size_t m, std::size_t w, std::mt19937_64& rng) {
  BitVec v(m);
  std::size_t placed = 0;
  while (placed < w) {
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
    if (!v.get(i)) {
      v.set(i, true);
      ++placed;
    }
  }
  return v;
}

}  // namespace

WaterfallResult waterfall_threshold(const SymplecticCode& code, const BpDecoder& dec,
                                    std::size_t trials, double success_target,
                                    uint64_t seed) {
  const std::size_t m = code.m;
  auto rate_at = [&](std::size_t flips) {
    if (flips == 0) return WaterfallPoint{0, trials, trials, 1.0};
    std::size_t succ = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + flips * 0x100000001b3ull + t);
      BitVec err = random_weight_vector(m, flips, rng);
      BitVec syn = code.syndrome(err);
      double prior = std::max(1e-6, std::min(0.499, double(flips) / double(m)));
      DecodeResult r = dec.decode_with_prior(syn, prior);
      if (r.status == DecodeResult::Decoded && r.error_vector == err) ++succ;
    }
    return WaterfallPoint{flips, trials, succ, double(succ) / double(trials)};
  };

  WaterfallResult out;
  // Exponential search for an upper bracket, then bisection.
  std::size_t lo = 0, hi = std::max<std::size_t>(1, m / 256);
  out.curve.push_back(rate_at(0));
  while (hi < m) {
    WaterfallPoint p = rate_at(hi);
    out.curve.push_back(p);
    if (p.rate < success_target) break;
    lo = hi;
    hi = std::min(m, hi * 2);
  }
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    WaterfallPoint p = rate_at(mid);
    out.curve.push_back(p);
    if (p.rate >= success_target) lo = mid; else hi = mid;
  }
  std::sort(out.curve.begin(), out.curve.end(),
            [](const WaterfallPoint& a, const WaterfallPoint& b) { return a.flips < b.flips; });
  out.curve.erase(std::unique(out.curve.begin(), out.curve.end(),
                              [](const WaterfallPoint& a, const WaterfallPoint& b) {
                                return a.flips == b.flips;
                              }),
                  out.curve.end());
  out.threshold_flips = lo;
  out.threshold_fraction = double(lo) / double(m);
  return out;
}

}  // namespace hdqi

#include "hdqi/code.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <ostream>
#include <sstream>

namespace hdqi {

BitVec ParityCheckMatrix::syndrome(const BitVec& y) const {
  if (y.size() != cols) throw std::invalid_argument("syndrome: length mismatch");
  return bits.mul(y);
}

BitVec SymplecticCode::syndrome(const BitVec& y) const { return check.syndrome(y); }

SymplecticCode build_code(const PauliHamiltonian& h) {
  SymplecticCode code;
  code.n = h.n;
  code.m = h.m();
  code.check.rows = 2 * h.n;
  code.check.cols = h.m();
  code.check.bits = BitMatrix(2 * h.n, h.m());
  for (std::size_t i = 0; i < h.m(); ++i) {
    const PauliWord& w = h.terms[i].word;
    for (std::size_t q : w.x.ones()) code.check.bits.set(q, i, true);
    for (std::size_t q : w.z.ones()) code.check.bits.set(q + h.n, i, true);
  }
  code.dimension = code.m - code.check.bits.rank();
  return code;
}

TannerGraph SymplecticCode::tanner() const {
  TannerGraph g;
  g.data_nodes = m;
  g.data_adj.resize(m);
  for (std::size_t r = 0; r < check.rows; ++r) {
    auto ones = check.bits.row(r).ones();
    if (ones.empty()) continue;  // zero rows kept in the matrix, dropped here
    uint32_t cnode = uint32_t(g.check_adj.size());
    g.check_adj.emplace_back();
    g.check_row.push_back(uint32_t(r));
    for (std::size_t c : ones) {
      g.check_adj[cnode].push_back(uint32_t(c));
      g.data_adj[c].push_back(cnode);
    }
  }
  g.check_nodes = g.check_adj.size();
  return g;
}

namespace {

// Gray-code walk over nonzero combinations of the kernel basis.
DistanceReport distance_by_kernel_enum(const std::vector<BitVec>& kernel,
                                       std::size_t m) {
  std::size_t k = kernel.size();
  std::size_t best = m + 1;
  BitVec cur(m);
  uint64_t count = uint64_t(1) << k;
  uint64_t prev_gray = 0;
  for (uint64_t i = 1; i < count; ++i) {
    uint64_t gray = i ^ (i >> 1);
    uint64_t diff = gray ^ prev_gray;
    prev_gray = gray;
    cur ^= kernel[std::size_t(std::countr_zero(diff))];
    best = std::min(best, cur.popcount());
  }
  DistanceReport r;
  r.kind = DistanceReport::Exact;
  r.value = best;
  return r;
}

}  // namespace

DistanceReport min_distance_bruteforce(const SymplecticCode& code,
                                       std::size_t weight_cap,
                                       std::size_t budget) {
  if (code.dimension == 0) return DistanceReport{DistanceReport::Infinite, 0};
  // Preferred route: enumerate the kernel space when it fits the budget.
  if (code.dimension < 63 &&
      (uint64_t(1) << code.dimension) <= budget) {
    auto kernel = code.check.bits.kernel_basis();
    return distance_by_kernel_enum(kernel, code.m);
  }
  // Fallback: support enumeration up to weight_cap.
  std::size_t m = code.m;
  double work = 0;
  for (std::size_t w = 1; w <= weight_cap; ++w) {
    double c = 1;
    for (std::size_t i = 0; i < w; ++i) c = c * double(m - i) / double(i + 1);
    work += c;
  }
  if (!(m <= 30 || weight_cap <= 6) || work > double(budget))
    throw BudgetExceeded("min_distance_bruteforce: enumeration budget exceeded");
  std::vector<BitVec> cols;
  for (std::size_t c = 0; c < m; ++c) cols.push_back(code.check.bits.column(c));
  std::vector<std::size_t> idx;
  // DFS over supports of size w with incremental XOR
  for (std::size_t w = 1; w <= weight_cap; ++w) {
    std::vector<std::size_t> pick(w);
    BitVec acc(code.check.rows);
    std::function<bool(std::size_t, std::size_t)> rec =
        [&](std::size_t depth, std::size_t start) -> bool {
      if (depth == w) return acc.is_zero();
      for (std::size_t c = start; c + (w - depth) <= m; ++c) {
        acc ^= cols[c];
        if (rec(depth + 1, c + 1)) return true;
        acc ^= cols[c];
      }
      return false;
    };
    if (rec(0, 0)) return DistanceReport{DistanceReport::Exact, w};
  }
  return DistanceReport{DistanceReport::GreaterThanCap, weight_cap};
}

ExpansionReport expansion_check(const TannerGraph& g, double delta, double gamma,
                                std::size_t subset_cap, std::size_t budget) {
  std::size_t m = g.data_nodes;
  std::size_t max_size = std::min<std::size_t>(subset_cap, std::size_t(delta * double(m)));
  ExpansionReport rep;
  rep.min_expansion.assign(max_size + 1, 1e300);
  rep.min_unique_expansion.assign(max_size + 1, 1e300);

  double work = 0;
  for (std::size_t s = 1; s <= max_size; ++s) {
    double c = 1;
    for (std::size_t i = 0; i < s; ++i) c = c * double(m - i) / double(i + 1);
    work += c;
  }
  if (work > double(budget))
    throw BudgetExceeded("expansion_check: subset enumeration budget exceeded");

  std::vector<int> touch(g.check_nodes, 0);
  std::vector<uint32_t> touched;
  std::vector<uint32_t> subset;
  bool done = false;

  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                          std::size_t target) {
    if (done) return;
    if (subset.size() == target) {
      std::size_t gamma_s = 0, gamma1_s = 0;
      for (uint32_t c : touched) {
        if (touch[c] >= 1) ++gamma_s;
        if (touch[c] == 1) ++gamma1_s;
      }
      double s = double(target);
      rep.min_expansion[target] = std::min(rep.min_expansion[target], double(gamma_s) / s);
      rep.min_unique_expansion[target] =
          std::min(rep.min_unique_expansion[target], double(gamma1_s) / s);
      if (double(gamma_s) < gamma * s && rep.is_expander) {
        rep.is_expander = false;
        rep.witness = subset;
        done = true;
      }
      return;
    }
    for (std::size_t v = start; v + (target - subset.size()) <= m; ++v) {
      subset.push_back(uint32_t(v));
      for (uint32_t c : g.data_adj[v]) {
        if (touch[c] == 0) touched.push_back(c);
        ++touch[c];
      }
      rec(v + 1, target);
      for (uint32_t c : g.data_adj[v]) {
        --touch[c];
      }
      touched.erase(std::remove_if(touched.begin(), touched.end(),
                                   [&](uint32_t c) { return touch[c] == 0; }),
                    touched.end());
      subset.pop_back();
      if (done) return;
    }
  };
  for (std::size_t s = 1; s <= max_size && !done; ++s) rec(0, s);
  return rep;
}

void write_alist(std::ostream& out, const ParityCheckMatrix& pc) {
  // MacKay alist: "N M", max degrees, per-node degrees, 1-indexed adjacency.
  std::size_t N = pc.cols, M = pc.rows;
  std::vector<std::vector<std::size_t>> col_adj(N), row_adj(M);
  for (std::size_t r = 0; r < M; ++r)
    for (std::size_t c : pc.bits.row(r).ones()) {
      col_adj[c].push_back(r + 1);
      row_adj[r].push_back(c + 1);
    }
  std::size_t maxc = 0, maxr = 0;
  for (auto& a : col_adj) maxc = std::max(maxc, a.size());
  for (auto& a : row_adj) maxr = std::max(maxr, a.size());
  out << N << ' ' << M << '\n' << maxc << ' ' << maxr << '\n';
  for (std::size_t c = 0; c < N; ++c) out << col_adj[c].size() << (c + 1 < N ? ' ' : '\n');
  for (std::size_t r = 0; r < M; ++r) out << row_adj[r].size() << (r + 1 < M ? ' ' : '\n');
  for (auto& a : col_adj) {
    for (std::size_t i = 0; i < a.size(); ++i) out << a[i] << (i + 1 < a.size() ? ' ' : '\n');
    if (a.empty()) out << '\n';
  }
  for (auto& a : row_adj) {
    for (std::size_t i = 0; i < a.size(); ++i) out << a[i] << (i + 1 < a.size() ? ' ' : '\n');
    if (a.empty()) out << '\n';
  }
}

std::string to_alist(const ParityCheckMatrix& pc) {
  std::ostringstream ss;
  write_alist(ss, pc);
  return ss.str();
}

}  // namespace hdqi

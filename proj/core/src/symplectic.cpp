#include "hdqi/symplectic.hpp"

#include <stdexcept>

namespace hdqi {

bool symplectic_dot(const BitVec& u, const BitVec& v) {
  std::size_t n = u.size() / 2;
  bool r = false;
  for (std::size_t j = 0; j < n; ++j) {
    r ^= (u.get(j) & v.get(j + n));
    r ^= (u.get(j + n) & v.get(j));
  }
  return r;
}

GramSchmidtResult symplectic_gram_schmidt(const std::vector<BitVec>& vectors) {
  GramSchmidtResult out;
  std::vector<BitVec> work = vectors;
  std::vector<BitVec> leftovers;
  while (!work.empty()) {
    BitVec u = work.front();
    work.erase(work.begin());
    if (u.is_zero()) continue;
    int partner = -1;
    for (std::size_t i = 0; i < work.size(); ++i)
      if (symplectic_dot(u, work[i])) { partner = int(i); break; }
    if (partner < 0) {
      leftovers.push_back(u);
      continue;
    }
    BitVec v = work[std::size_t(partner)];
    work.erase(work.begin() + partner);
    // reduce the rest so it is orthogonal to the new pair
    for (auto& w : work) {
      if (symplectic_dot(w, v)) w ^= u;
      if (symplectic_dot(w, u)) w ^= v;
    }
    for (auto& w : leftovers) {
      if (symplectic_dot(w, v)) w ^= u;
      if (symplectic_dot(w, u)) w ^= v;
    }
    out.pairs.emplace_back(std::move(u), std::move(v));
  }
  // keep an independent set of leftovers; span of (pairs + leftovers) is
  // unchanged by dropping dependent ones
  if (!leftovers.empty()) {
    RowBasis basis(leftovers.front().size());
    for (auto& w : leftovers) {
      BitVec red = basis.reduce(w);
      if (!red.is_zero()) {
        basis.insert(red);
        out.isotropic.push_back(red);
      }
    }
  }
  return out;
}

namespace {

// coefficient vector of the functional t -> <t, v>: swap the X and Z blocks
BitVec pairing_functional(const BitVec& v) {
  std::size_t n = v.size() / 2;
  BitVec f(v.size());
  for (std::size_t j = 0; j < n; ++j) {
    if (v.get(j + n)) f.set(j, true);
    if (v.get(j)) f.set(j + n, true);
  }
  return f;
}

// partner of `target` orthogonal to everything in `zeros`
BitVec solve_partner(const std::vector<BitVec>& zeros, const BitVec& target) {
  std::size_t two_n = target.size();
  BitMatrix M(zeros.size() + 1, two_n);
  BitVec rhs(zeros.size() + 1);
  for (std::size_t r = 0; r < zeros.size(); ++r) {
    BitVec f = pairing_functional(zeros[r]);
    for (std::size_t c : f.ones()) M.set(r, c, true);
  }
  BitVec f = pairing_functional(target);
  for (std::size_t c : f.ones()) M.set(zeros.size(), c, true);
  rhs.set(zeros.size(), true);
  auto t = M.solve(rhs);
  if (!t) throw std::logic_error("symplectic partner solve failed");
  return *t;
}

// Complete a list of mutually consistent hyperbolic pairs to a full
// symplectic basis of F2^{2n}; the seed pairs are returned unchanged in
// front.
std::vector<std::pair<BitVec, BitVec>> complete_to_symplectic_basis(
    const std::vector<std::pair<BitVec, BitVec>>& seed_pairs, std::size_t two_n) {
  std::vector<BitVec> seed;
  for (const auto& [u, v] : seed_pairs) {
    seed.push_back(u);
    seed.push_back(v);
  }
  for (std::size_t i = 0; i < two_n; ++i) {
    BitVec e(two_n);
    e.set(i, true);
    seed.push_back(std::move(e));
  }
  GramSchmidtResult gs = symplectic_gram_schmidt(seed);
  if (!gs.isotropic.empty() || gs.pairs.size() != two_n / 2)
    throw std::logic_error("symplectic completion failed");
  return std::move(gs.pairs);
}

// Pair the isotropic leftovers one by one against explicit linear solves so
// that the pairing never mixes the leftovers with each other.
std::vector<std::pair<BitVec, BitVec>> pair_leftovers(
    const std::vector<std::pair<BitVec, BitVec>>& pairs,
    const std::vector<BitVec>& leftovers) {
  std::vector<std::pair<BitVec, BitVec>> out = pairs;
  std::vector<BitVec> all;
  for (const auto& [u, v] : pairs) {
    all.push_back(u);
    all.push_back(v);
  }
  for (const auto& w : leftovers) all.push_back(w);
  for (std::size_t j = 0; j < leftovers.size(); ++j) {
    std::vector<BitVec> zeros;
    for (const auto& v : all)
      if (!(v == leftovers[j])) zeros.push_back(v);
    BitVec t = solve_partner(zeros, leftovers[j]);
    out.emplace_back(leftovers[j], t);
    all.push_back(t);
  }
  return out;
}

}  // namespace

BitMatrix extend_symplectic(const BitMatrix& T, const BitMatrix& B) {
  std::size_t two_n = B.rows();
  if (T.rows() != two_n || T.cols() != two_n)
    throw std::invalid_argument("extend_symplectic: T must be 2n x 2n");
  std::vector<BitVec> cols;
  for (std::size_t c = 0; c < B.cols(); ++c) cols.push_back(B.column(c));
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = i; j < cols.size(); ++j)
      if (symplectic_dot(cols[i], cols[j]) !=
          symplectic_dot(T.mul(cols[i]), T.mul(cols[j])))
        throw std::invalid_argument(
            "extend_symplectic: T does not preserve the form on columns of B");

  GramSchmidtResult gs = symplectic_gram_schmidt(cols);

  // Domain: hyperbolic pairs of span(B), leftovers paired by explicit solves,
  // then an arbitrary completion.
  auto domain_pairs = pair_leftovers(gs.pairs, gs.isotropic);
  domain_pairs = complete_to_symplectic_basis(domain_pairs, two_n);

  // Image: apply T to the span side only; partners and completion are free.
  std::vector<std::pair<BitVec, BitVec>> image_seed;
  for (std::size_t p = 0; p < gs.pairs.size(); ++p)
    image_seed.emplace_back(T.mul(gs.pairs[p].first), T.mul(gs.pairs[p].second));
  std::vector<BitVec> image_leftovers;
  for (const auto& w : gs.isotropic) image_leftovers.push_back(T.mul(w));
  auto image_pairs = pair_leftovers(image_seed, image_leftovers);
  image_pairs = complete_to_symplectic_basis(image_pairs, two_n);

  // T' maps the domain basis to the image basis: T' = V * U^{-1}.
  BitMatrix U(two_n, two_n), V(two_n, two_n);
  for (std::size_t p = 0; p < domain_pairs.size(); ++p) {
    auto put = [&](BitMatrix& M, const BitVec& col, std::size_t c) {
      for (std::size_t r : col.ones()) M.set(r, c, true);
    };
    put(U, domain_pairs[p].first, 2 * p);
    put(U, domain_pairs[p].second, 2 * p + 1);
    put(V, image_pairs[p].first, 2 * p);
    put(V, image_pairs[p].second, 2 * p + 1);
  }
  BitMatrix Tprime(two_n, two_n);
  for (std::size_t r = 0; r < two_n; ++r) {
    BitVec e(two_n);
    e.set(r, true);
    auto xi = U.solve(e);
    if (!xi) throw std::logic_error("extend_symplectic: basis not invertible");
    BitVec col = V.mul(*xi);
    for (std::size_t rr : col.ones()) Tprime.set(rr, r, true);
  }
  return Tprime;
}

bool is_symplectic_matrix(const BitMatrix& T) {
  std::size_t two_n = T.rows();
  if (T.cols() != two_n || two_n % 2 != 0) return false;
  for (std::size_t i = 0; i < two_n; ++i) {
    BitVec ti = T.column(i);
    for (std::size_t j = i; j < two_n; ++j) {
      BitVec ei(two_n), ej(two_n);
      ei.set(i, true);
      ej.set(j, true);
      if (symplectic_dot(ti, T.column(j)) != symplectic_dot(ei, ej)) return false;
    }
  }
  return true;
}

}  // namespace hdqi

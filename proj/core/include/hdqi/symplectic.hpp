#pragma once

#include <vector>

#include "hdqi/bits.hpp"

namespace hdqi {

// Symplectic inner product on F2^{2n} with X block first:
// <u,v> = sum_j u_j v_{j+n} + u_{j+n} v_j.
bool symplectic_dot(const BitVec& u, const BitVec& v);

struct GramSchmidtResult {
  // pairs (u_i, u'_i) with <u_i,u'_j> = delta_ij, all other products zero
  std::vector<std::pair<BitVec, BitVec>> pairs;
  // linearly independent leftovers, symplectically orthogonal to everything
  std::vector<BitVec> isotropic;
};

GramSchmidtResult symplectic_gram_schmidt(const std::vector<BitVec>& vectors);

// Given T acting on F2^{2n} that preserves the symplectic product on all
// column pairs of B, produce a fully symplectic T' with T' B = T B.
// Throws std::invalid_argument when the precondition fails.
BitMatrix extend_symplectic(const BitMatrix& T, const BitMatrix& B);

// T^T J T = J for the standard form J (X block first).
bool is_symplectic_matrix(const BitMatrix& T);

}  // namespace hdqi

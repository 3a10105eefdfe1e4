#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hdqi/rational.hpp"

namespace hdqi {

// Univariate polynomial, power basis: coeffs[k] multiplies x^k.
struct UniPoly {
  std::vector<double> coeffs;

  UniPoly() = default;
  explicit UniPoly(std::vector<double> c) : coeffs(std::move(c)) { trim(); }

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  double eval(double x) const {
    double v = 0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
    return v;
  }
  void trim() {
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  }
  std::string to_json() const;
  static UniPoly from_json(const std::string& text);
};

// Exact combinatorial coefficient: (z_1+...+z_m)^l = sum_r a(m,l,r) e_r(z),
// with z_i^2 = 1. Computed by the antisymmetrize/symmetrize double sum.
BigInt a_coefficient(unsigned m, unsigned ell, unsigned r);

struct SymmetricWeights {
  std::size_t m = 0;
  std::vector<double> w;  // w_0 .. w_ell
};

// w_j = sum_k c_k a(m,k,j); exact integer core, floating conversion at the end.
SymmetricWeights symmetric_weights(const UniPoly& poly, std::size_t m);

struct GibbsPoly {
  double beta = 0, K = 0, epsilon = 0;
  std::size_t degree = 0;
  std::vector<double> cheb;  // Chebyshev coefficients in u = x/K (c0 + sum ck Tk)
  UniPoly power;             // same polynomial in the variable x

  double eval_x(double x) const;  // Clenshaw in u = x/K
  // max over a grid of |P^2(x) - e^{-beta x}| / e^{-beta x}
  double grid_relative_error(std::size_t grid_points = 10000) const;
};

// Degree from the Thm bound ceil(1.12 beta K + 0.648 ln(12/eps)), coefficients
// are modified Bessel values with alternating signs via backward recurrence.
GibbsPoly gibbs_poly(double beta, double K, double epsilon);

// Modified Bessel I_k(a) for k = 0..kmax by Miller backward recurrence,
// normalized with e^a = I0 + 2 sum_k Ik.
std::vector<double> bessel_i_list(double a, std::size_t kmax);

// Degree-<=m polynomial P with P(lambda) = sqrt(f(lambda)) on the grid
// {-m, -m+2, ..., m}. Newton divided differences in extended precision.
UniPoly interpolate_sqrt(const std::function<double(double)>& f, std::size_t m);

struct Relation {
  std::vector<std::size_t> support;  // subset of [0, m)
  int sign = 1;                      // prod_{i in support} z_i = sign
};

struct BlockExpansion {
  std::size_t m = 0;                       // original variable count
  std::size_t k = 0;                       // relations
  std::vector<std::size_t> free_vars;      // the d = m-k independent variables
  std::vector<std::size_t> pivot_vars;     // eliminated variables, one per relation
  std::vector<std::vector<std::size_t>> blocks;  // partition of free_vars (indices into free_vars)
  std::vector<std::size_t> block_of;       // free var position -> block id
  std::vector<std::vector<std::size_t>> reflected_blocks;  // per relation: block ids in U_j
  std::vector<int> relation_signs;         // R_j sign after elimination
  std::vector<double> gamma;               // flat array, strides over blocks
  std::vector<std::size_t> dims;           // d_t = |V_t|
  std::vector<std::size_t> strides;

  std::size_t flat_index(const std::vector<std::size_t>& a) const;
  double gamma_at(const std::vector<std::size_t>& a) const { return gamma[flat_index(a)]; }
  // gamma index of a free-variable pattern y (bit per free var position)
  std::vector<std::size_t> pattern_counts(const std::vector<bool>& y) const;
};

// Relation elimination + blockwise Horner with the tridiagonal-plus-
// reflection operator. Rejects mod-2 dependent relations, guards k <= 10.
BlockExpansion blockwise_expand(const UniPoly& poly, std::size_t m,
                                const std::vector<Relation>& relations);

}  // namespace hdqi

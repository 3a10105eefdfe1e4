#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdqi/pauli.hpp"
#include "hdqi/poly.hpp"
#include "hdqi/rational.hpp"

namespace hdqi {

// Graph on Hamiltonian terms; edge iff the terms anticommute.
struct AnticommGraph {
  std::size_t m = 0;
  std::vector<std::vector<uint32_t>> adj;      // sorted neighbor lists
  std::vector<std::vector<uint32_t>> components;  // sorted by min vertex

  bool has_edge(std::size_t i, std::size_t j) const;
  std::size_t max_component_size() const;

  static AnticommGraph from_adjacency(std::size_t m,
                                      const std::vector<std::pair<uint32_t, uint32_t>>& edges);
};

AnticommGraph anticomm_graph(const PauliHamiltonian& h);

using CountVector = std::vector<uint32_t>;  // mu

// Sign of one ordered sequence relative to the canonical increasing order:
// parity of anticommuting inversions.
int sgn_eval(const AnticommGraph& g, const std::vector<uint32_t>& sequence);

// Memoized Sigma_G / alpha_G over the down-set of mu. Exact rationals.
class AlphaTable {
 public:
  explicit AlphaTable(const AnticommGraph& g, std::size_t budget = std::size_t(1) << 24)
      : g_(&g), budget_(budget) {}

  BigInt sigma(const CountVector& mu);    // C(|mu|, mu) * alpha
  Rational alpha(const CountVector& mu);  // exact antisymmetry character

 private:
  const AnticommGraph* g_;
  std::size_t budget_;
  std::unordered_map<std::string, BigInt> memo_;
};

Rational alpha_dp(const AnticommGraph& g, const CountVector& mu,
                  std::size_t budget = std::size_t(1) << 24);

// beta_G^{(k)}(y) = sum over weak compositions nu of (k-w)/2 of Sigma(y+2nu).
// Always an integer for integer multinomials; returned exactly.
BigInt beta_eval(const AnticommGraph& g, std::size_t k, const BitVec& y,
                 std::size_t budget = std::size_t(1) << 24);

// Bond-dimension-(ell+1) matrix product description of the general pilot
// state. Site matrices are exact integers; amplitudes mix in the polynomial
// coefficients at the end.
class PilotMPS {
 public:
  PilotMPS(const PauliHamiltonian& h, const UniPoly& poly,
           std::size_t component_cap = 20);

  std::size_t num_sites() const { return site_.size(); }
  std::size_t bond_dim() const { return ell_ + 1; }
  const std::vector<uint32_t>& component(std::size_t t) const { return comps_[t]; }

  // site matrix entry (K_prev, K_next) for local pattern y_t
  const BigInt& site_entry(std::size_t t, uint32_t pattern, std::size_t K_prev,
                           std::size_t K_next) const;

  // amplitude of the full pattern y (length m), unnormalized: v_L^T prod A v_R
  double amplitude(const BitVec& y) const;
  // squared norm of the unnormalized state, via left-to-right transfer
  // contraction
  double norm_squared() const;

  std::string to_json() const;

 private:
  std::size_t m_ = 0, ell_ = 0;
  std::vector<double> coeffs_;                  // v_R = (c_0 .. c_ell)
  std::vector<std::vector<uint32_t>> comps_;    // site -> vertex list
  // site_[t][pattern] is a (ell+1)^2 row-major matrix
  std::vector<std::vector<std::vector<BigInt>>> site_;
};

// Ground-truth amplitude table by expanding P(sum v_i P_i) over all m^k index
// sequences with operator-level phase tracking. m <= 10, ell <= 6.
std::vector<double> pilot_amplitudes_bruteforce(const PauliHamiltonian& h,
                                                const UniPoly& poly);

}  // namespace hdqi

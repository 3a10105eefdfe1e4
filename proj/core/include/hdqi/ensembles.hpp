#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "hdqi/anticomm.hpp"
#include "hdqi/pauli.hpp"

namespace hdqi {

// Greedy rejection sampler: m distinct weight-k pairwise-commuting Paulis,
// signs uniform. Throws when the total rejection budget is exhausted.
PauliHamiltonian greedy_commuting(std::size_t n, std::size_t k, std::size_t m,
                                  uint64_t seed,
                                  std::size_t rejection_cap = 1000000);

// p-semiclassical spin glass with sparsity (a, b): random (a, b)-regular
// support matrix, each term Z-type or X-type independently (X with
// probability p), signs uniform.
struct SparseSpinGlass {
  std::size_t n = 0, m = 0;
  std::vector<std::vector<uint32_t>> supports;  // column supports, weight a
  std::vector<char> x_type;                     // 1 = X-type, 0 = Z-type
  std::vector<int> signs;

  PauliHamiltonian to_hamiltonian() const;
};

SparseSpinGlass spin_glass_sparse(std::size_t n, std::size_t a, std::size_t b,
                                  double p, uint64_t seed,
                                  std::size_t resample_cap = 10000);

PauliHamiltonian spin_glass(std::size_t n, std::size_t a, std::size_t b, double c,
                            double p, uint64_t seed);

// Built-in models. All terms carry sign -1 (stabilizer parent Hamiltonians).
PauliHamiltonian ising_ring(std::size_t L);
PauliHamiltonian toric_code(std::size_t L);
PauliHamiltonian cluster_ring(std::size_t L);
PauliHamiltonian cluster_graph(std::size_t L, const std::vector<std::pair<uint32_t, uint32_t>>& edges);

// Independent-stabilizer reference family for the semicircle experiment:
// H = sum_i Z_i on m qubits (dimension-0 symplectic code, infinite distance).
PauliHamiltonian independent_z(std::size_t m);

using DefectRule = std::function<SignedTerm(const SignedTerm&, std::mt19937_64&)>;

DefectRule defect_random_in_support();
DefectRule defect_z_to_x();

// Independent per-term defects with probability p. The rule must not create
// new relations: dim Symp is recomputed and asserted unchanged.
PauliHamiltonian defect_apply(const PauliHamiltonian& h, double p,
                              const DefectRule& rule, uint64_t seed);

struct ComponentStats {
  std::size_t nodes = 0, edges = 0, max_size = 0;
  std::vector<std::pair<std::size_t, std::size_t>> histogram;  // (size, count)
};

ComponentStats component_stats(const AnticommGraph& g);

// Sparse path for large instances: union-find over qubit incidence, no dense
// Pauli material. One entry per trial, seeds derived from (seed, trial).
std::vector<ComponentStats> component_experiment_spin_glass(
    std::size_t n, std::size_t a, std::size_t b, double p, std::size_t trials,
    uint64_t seed);

// Semicircle law: closed-form asymptotic <E>/m for the optimal degree-ell
// polynomial.
double semicircle_predict(std::size_t ell, std::size_t m);

struct SemicircleWeights {
  std::vector<double> w;    // optimal Dicke weights w_0..w_ell
  double lambda_max = 0;    // finite-m optimum of <E>
};

// Principal eigenvector of the (ell+1)^2 symmetric tridiagonal form with
// off-diagonals sqrt((j+1)(m-j)).
SemicircleWeights optimal_semicircle_weights(std::size_t ell, std::size_t m);

// All three values are in the units of the semicircle formula, i.e. the
// term-agreement fraction (E/m + 1)/2; the closed form is its m -> infinity
// optimum and equals 1/2 + sqrt(r(1-r)) at r = l/m.
struct SemicircleMeasurement {
  double measured = 0;   // sampled
  double exact = 0;      // exact for this H and weight vector
  double predicted = 0;  // closed form
};

// Measured <E>/m on a commuting H: weight classes from the coset table,
// eigenvalues weighted by the squared pilot-value, sampled per seed.
SemicircleMeasurement semicircle_experiment(const PauliHamiltonian& h,
                                            std::size_t ell, std::size_t samples,
                                            uint64_t seed);

}  // namespace hdqi

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "hdqi/pauli.hpp"
#include "hdqi/poly.hpp"

namespace hdqi {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

// Amplitude vector over num_qubits qubits. Qubit q corresponds to bit q of
// the basis index (qubit 0 is the least significant bit).
struct DenseState {
  std::size_t num_qubits = 0;
  std::vector<cplx> amp;

  explicit DenseState(std::size_t q = 0)
      : num_qubits(q), amp(std::size_t(1) << q, cplx(0)) {}

  double norm() const;
  void normalize();
};

struct DensityMatrix {
  CMat mat;

  std::size_t dim() const { return std::size_t(mat.rows()); }
  double trace_error() const { return std::abs(mat.trace() - cplx(1)); }
  double hermiticity_error() const { return (mat - mat.adjoint()).cwiseAbs().maxCoeff(); }
};

// Hermitian dense operator of a phase-free word (standard Y on overlaps).
CMat dense_word(const PauliWord& w);
CMat dense_hamiltonian(const PauliHamiltonian& h);

// rho ∝ P^2(H), built by Horner on dense matrices. n <= 12.
DensityMatrix rho_direct(const PauliHamiltonian& h, const UniPoly& poly);
// Same for an arbitrary nonnegative weight f over the spectrum: f(H)/Tr f(H).
DensityMatrix rho_of_function(const PauliHamiltonian& h,
                              const std::function<double(double)>& f);
// Exact Gibbs state e^{-beta H}/Tr.
DensityMatrix gibbs_exact(const PauliHamiltonian& h, double beta);

// Coherent Bell transform on the BC block (B = bits [n_pairs, 2 n_pairs),
// C = low n_pairs bits; any higher bits ride along untouched): maps
// (op(P) ⊗ I)|Phi^n> to |symp(P)> = |x part>_B |z part>_C, exactly and with
// no residual phases.
void bell_transform(DenseState& s);
void bell_transform(DenseState& s, std::size_t n_pairs);
void bell_transform_inverse(DenseState& s);
void bell_transform_inverse(DenseState& s, std::size_t n_pairs);

// |Phi^n> on 2n qubits.
DenseState max_entangled(std::size_t n);

// (trace_distance, fidelity); fidelity is the square-root (Uhlmann) version.
std::pair<double, double> distance_metrics(const DensityMatrix& a,
                                           const DensityMatrix& b);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace hdqi

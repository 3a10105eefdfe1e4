#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdqi/bits.hpp"
#include "hdqi/pauli.hpp"

namespace hdqi {

// Stabilizer group given by r <= n signed generators. When r < n the
// described state is the normalized projector onto the stabilized subspace.
struct StabilizerTableau {
  std::size_t n = 0;
  std::vector<PauliWord> gens;
  std::vector<int> signs;  // +-1 per generator

  std::size_t rank() const { return gens.size(); }
  bool is_valid() const;  // pairwise commuting and independent
  std::string to_jsonl() const;
  static StabilizerTableau from_jsonl(const std::string& line);
};

// <P> over the tableau state: +-1 when +-P is in the stabilizer group
// (membership by F2 solve, sign by exact operator products), else 0.
int stabilizer_expectation(const StabilizerTableau& t, const PauliWord& p);
double stabilizer_energy(const StabilizerTableau& t, const PauliHamiltonian& h);

struct CliffordGate {
  enum Kind { H, S, Sdg, CX, CZ } kind;
  uint32_t a = 0, b = 0;  // qubits; b used by CX/CZ
};

// Conjugate a signed word by one gate: P -> g P g^dagger, exact sign update.
void conjugate_in_place(const CliffordGate& g, PauliWord& w, int& sign);

struct DiagonalizationResult {
  std::vector<CliffordGate> gates;  // U as a gate sequence, applied in order
  std::vector<BitVec> a_vectors;    // Z support of U P_i U^dagger, length n
  std::vector<int> folded_signs;    // v_i times the conjugation sign
  BitMatrix symplectic;             // 2n x 2n action on symp vectors

  // conjugate an arbitrary signed word by the recorded gate sequence
  std::pair<PauliWord, int> conjugate(const PauliWord& w, int sign) const;
};

// Tableau-algebra construction of a Clifford sending every term into the Z
// block, with exact sign tracking. Rejects non-commuting input.
DiagonalizationResult diagonalize_commuting(const PauliHamiltonian& h);

struct SaSchedule {
  double t_hi = 2.0;
  double t_lo = 0.01;
  std::size_t restarts = 20;
};

struct SaResult {
  double best_energy = 0;
  StabilizerTableau best_state;
  std::vector<std::pair<uint64_t, double>> trace;  // (step, energy) samples
  double approximation_ratio = 0;  // term-agreement fraction (E/m + 1)/2
};

// Metropolis walk from |0^n>, proposals are uniform random single-qubit
// Cliffords on uniform random qubits, acceptance exp(dE/T) with a geometric
// temperature schedule; energy maintained incrementally in the conjugated
// frame.
SaResult clifford_sa(const PauliHamiltonian& h, std::size_t steps,
                     SaSchedule sched, uint64_t seed);

}  // namespace hdqi

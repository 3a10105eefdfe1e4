#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdqi/pauli.hpp"

namespace hdqi {

// Thrown when an enumeration/table would exceed its stated budget. The
// brute-force routines refuse rather than return a wrong or partial answer.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// B^T in F2^{2n x m}; column i is symp(P_i).
struct ParityCheckMatrix {
  std::size_t rows = 0;  // 2n
  std::size_t cols = 0;  // m
  BitMatrix bits;        // row-major

  BitVec syndrome(const BitVec& y) const;  // B^T y
  std::size_t row_weight(std::size_t r) const { return bits.row(r).popcount(); }
};

struct TannerGraph {
  std::size_t data_nodes = 0;   // m
  std::size_t check_nodes = 0;  // zero rows dropped
  std::vector<std::vector<uint32_t>> data_adj;   // data -> checks
  std::vector<std::vector<uint32_t>> check_adj;  // check -> data
  std::vector<uint32_t> check_row;               // check node -> original row
};

// Reported distance: finite value, or "infinite" (no nonzero codeword), or
// "greater than cap" when the enumeration stopped at the cap.
struct DistanceReport {
  enum Kind { Exact, Infinite, GreaterThanCap } kind = Infinite;
  std::size_t value = 0;  // valid when kind == Exact (or cap when GreaterThanCap)
};

struct SymplecticCode {
  ParityCheckMatrix check;
  std::size_t n = 0;          // qubits
  std::size_t m = 0;          // terms
  std::size_t dimension = 0;  // m - rank(B^T)

  BitVec syndrome(const BitVec& y) const;
  TannerGraph tanner() const;
};

SymplecticCode build_code(const PauliHamiltonian& h);

DistanceReport min_distance_bruteforce(const SymplecticCode& code,
                                       std::size_t weight_cap,
                                       std::size_t budget = std::size_t(1) << 26);

struct ExpansionReport {
  bool is_expander = true;
  std::vector<uint32_t> witness;  // first violating subset, if any
  // measured per-size minima over the enumerated range
  std::vector<double> min_expansion;         // min |Gamma(S)|/|S| per |S|
  std::vector<double> min_unique_expansion;  // min |Gamma_1(S)|/|S| per |S|
};

// Exhaustively checks |Gamma(S)| >= gamma |S| for all |S| <= min(delta*m, subset_cap).
ExpansionReport expansion_check(const TannerGraph& g, double delta, double gamma,
                                std::size_t subset_cap,
                                std::size_t budget = std::size_t(1) << 26);

// MacKay alist-style sparse text export of B^T.
void write_alist(std::ostream& out, const ParityCheckMatrix& pc);
std::string to_alist(const ParityCheckMatrix& pc);

}  // namespace hdqi

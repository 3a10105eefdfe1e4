#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hdqi/bits.hpp"

namespace hdqi {

// Power of i, exponent mod 4. Multiplication adds exponents.
struct Phase {
  uint8_t e = 0;  // value is i^e

  Phase() = default;
  explicit Phase(int exponent) : e(uint8_t(((exponent % 4) + 4) % 4)) {}

  Phase operator*(Phase o) const { return Phase(e + o.e); }
  Phase& operator*=(Phase o) { e = (e + o.e) & 3; return *this; }
  Phase inverse() const { return Phase(4 - e); }

  bool is_real() const { return (e & 1) == 0; }
  // +1 or -1; only valid when is_real()
  int sign() const { return e == 0 ? 1 : -1; }

  bool operator==(Phase o) const { return e == o.e; }

  std::string to_string() const {
    static const char* s[4] = {"+1", "+i", "-1", "-i"};
    return s[e & 3];
  }
};

// Phase-free n-qubit Pauli word in the symplectic representation: x_part is
// the X support, z_part the Z support. The operator of a word is the
// Hermitian Pauli per qubit (X^a Z^b normalized by i^{ab}), so words with
// both bits set act as the standard Y.
struct PauliWord {
  std::size_t n = 0;
  BitVec x, z;

  PauliWord() = default;
  explicit PauliWord(std::size_t n_) : n(n_), x(n_), z(n_) {}
  PauliWord(std::size_t n_, BitVec x_, BitVec z_)
      : n(n_), x(std::move(x_)), z(std::move(z_)) {}

  static PauliWord identity(std::size_t n) { return PauliWord(n); }
  // Single-qubit letter at position q (0-based), c in {'I','X','Y','Z'}.
  static PauliWord single(std::size_t n, std::size_t q, char c);

  bool is_identity() const { return x.is_zero() && z.is_zero(); }
  std::size_t weight() const;
  char letter(std::size_t q) const;
  void set_letter(std::size_t q, char c);

  bool operator==(const PauliWord& o) const { return n == o.n && x == o.x && z == o.z; }
  bool operator!=(const PauliWord& o) const { return !(*this == o); }

  std::string to_string() const;

  struct Hash {
    std::size_t operator()(const PauliWord& p) const {
      BitVec::Hash h;
      return h(p.x) * 1000003u ^ h(p.z);
    }
  };
};

// symp(P): X block first, per the adopted layout.
BitVec symp(const PauliWord& p);
PauliWord from_symp(const BitVec& v);

// Exact operator product: op(p) op(q) = phase * op(result).
std::pair<Phase, PauliWord> mul(const PauliWord& p, const PauliWord& q);

bool commutes(const PauliWord& p, const PauliWord& q);

struct SignedTerm {
  int sign = 1;  // +1 or -1
  PauliWord word;
};

struct PauliHamiltonian {
  std::size_t n = 0;
  std::vector<SignedTerm> terms;

  std::size_t m() const { return terms.size(); }
  bool is_commuting() const;
};

// Text format: first line "n m", then m lines "+1 IXYZ..." / "-1 ...".
PauliHamiltonian parse_hamiltonian(std::istream& in);
PauliHamiltonian parse_hamiltonian_file(const std::string& path);
void print_hamiltonian(std::ostream& out, const PauliHamiltonian& h);
std::string hamiltonian_to_string(const PauliHamiltonian& h);

}  // namespace hdqi

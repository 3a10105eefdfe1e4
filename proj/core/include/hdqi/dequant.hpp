#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hdqi/code.hpp"
#include "hdqi/rational.hpp"
#include "hdqi/stabilizer.hpp"

namespace hdqi {

// Counting table N(w, i, x) for a k x m check matrix: the number of strings
// of weight w whose first i entries are zero and whose syndrome is x.
class CosetTable {
 public:
  // columns: m vectors in F2^k (as masks); w_max: largest weight needed.
  CosetTable(const std::vector<uint32_t>& columns, std::size_t k, std::size_t w_max,
             std::size_t budget = std::size_t(1) << 28);

  const BigInt& count(std::size_t w, std::size_t i, uint32_t x) const;
  // N(w) for syndrome z: weight-w strings y with B^T y = z
  const BigInt& count(std::size_t w, uint32_t z) const { return count(w, 0, z); }

  // uniform sample from the weight-w coset; throws when the coset is empty
  BitVec sample(std::size_t w, uint32_t z, std::mt19937_64& rng) const;

  std::size_t m() const { return m_; }
  std::size_t k() const { return k_; }
  std::size_t w_max() const { return w_max_; }

 private:
  std::size_t m_, k_, w_max_;
  std::vector<uint32_t> cols_;
  std::vector<BigInt> table_;  // [w][i][x]
  std::size_t idx(std::size_t w, std::size_t i, uint32_t x) const {
    return (w * (m_ + 1) + i) * (std::size_t(1) << k_) + x;
  }
};

// exact count of weight-w vectors y with B^T y = z for a k x m matrix given
// as column masks
BigInt coset_count(const std::vector<uint32_t>& columns, std::size_t k,
                   std::size_t w, uint32_t z);

// Structure of a commuting Hamiltonian: a maximal independent subset of the
// signed terms plus the signed dependencies of the rest.
struct CommutingStructure {
  std::vector<std::size_t> independent;  // term indices, increasing
  // For each dependent term: its index, the independent positions it is a
  // product of, and the exact sign of that product (over the signed terms).
  struct Dependency {
    std::size_t term;
    std::vector<std::size_t> positions;  // indices into `independent`
    int sign;
  };
  std::vector<Dependency> deps;
};

CommutingStructure commuting_structure(const PauliHamiltonian& h);

struct SpectralSampleResult {
  std::vector<StabilizerTableau> tableaus;
  std::vector<std::size_t> weights;       // sampled |e| per draw
  std::vector<double> exact_pw;           // exact p_f over weights 0..m
  std::vector<BigInt> degeneracy;         // Delta(w), w = 0..m
};

// Classical spectral sampler for commuting H: weight class by the exact
// distribution p_f(w) ~ f(m - 2w) Delta(w), sign string uniformly within the
// class via the coset table, emitted as a tableau over the independent terms.
SpectralSampleResult spectral_sample(const PauliHamiltonian& h,
                                     const std::function<double(double)>& f,
                                     std::size_t samples, uint64_t seed,
                                     std::size_t budget = std::size_t(1) << 28);

}  // namespace hdqi

#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "hdqi/code.hpp"

namespace hdqi {

struct DecodeResult {
  enum Status { Decoded, DetectedFailure } status = DetectedFailure;
  BitVec error_vector;  // length m, valid when status == Decoded
};

// Deterministic syndrome decoder. decode() must be a pure function of the
// syndrome; every implementation re-checks the syndrome before reporting
// success, so failures are always detected, never silent.
class Decoder {
 public:
  virtual ~Decoder() = default;
  virtual DecodeResult decode(const BitVec& syndrome) const = 0;
  virtual std::size_t syndrome_bits() const = 0;
  virtual std::size_t block_length() const = 0;
};

// Exact table over every syndrome of every weight <= ell error, mapped to its
// minimum-weight preimage.
class LookupDecoder : public Decoder {
 public:
  LookupDecoder(const SymplecticCode& code, std::size_t ell,
                std::size_t budget = std::size_t(1) << 24);
  DecodeResult decode(const BitVec& syndrome) const override;
  std::size_t syndrome_bits() const override { return rows_; }
  std::size_t block_length() const override { return m_; }
  std::size_t ell() const { return ell_; }

 private:
  std::size_t rows_, m_, ell_;
  std::unordered_map<BitVec, BitVec, BitVec::Hash> table_;
};

// Solves B^T y = s exactly; intended for dimension-0 codes where the solution
// is unique. Any-weight correction.
class GeUniqueDecoder : public Decoder {
 public:
  explicit GeUniqueDecoder(const SymplecticCode& code);
  DecodeResult decode(const BitVec& syndrome) const override;
  std::size_t syndrome_bits() const override { return rows_; }
  std::size_t block_length() const override { return m_; }

 private:
  std::size_t rows_, m_;
  BitMatrix check_;
  std::vector<BitVec> pivot_rows_;  // echelonized rows of B^T
  std::vector<int> pivot_cols_;     // leading column per pivot row
  std::vector<BitVec> row_combo_;   // combination of original rows per pivot
};

struct BpParams {
  int max_iters = 100;
  double prior_flip_probability = 0.0;  // 0 -> caller supplies ell/m
  // schedule: flooding; damping: none
};

// Check-pruned sum-product decoder: dependent checks are removed highest
// weight first (ties broken toward the larger row index) until the check
// matrix has full rank, then standard flooding BP runs on what is left.
class BpDecoder : public Decoder {
 public:
  BpDecoder(const SymplecticCode& code, BpParams params);
  DecodeResult decode(const BitVec& syndrome) const override;
  // Known-channel variant: override the prior for this call.
  DecodeResult decode_with_prior(const BitVec& syndrome, double prior) const;
  std::size_t syndrome_bits() const override { return rows_; }
  std::size_t block_length() const override { return m_; }

  const std::vector<uint32_t>& kept_rows() const { return kept_rows_; }
  // Kernel of the pruned matrix equals the kernel of the original.
  BitMatrix pruned_matrix() const;

 private:
  std::size_t rows_, m_;
  BpParams params_;
  BitMatrix check_;
  std::vector<uint32_t> kept_rows_;
  // CSR over the pruned Tanner graph
  std::vector<uint32_t> chk_off_, chk_var_;
  std::vector<uint32_t> var_off_, var_edge_;  // edges indexed as in chk_var_
};

// Pure syndrome-controlled XOR contract: |y>|s> -> |y ^ dec(s)>|s>.
// A permutation of basis labels for any decoder, and an involution.
BitVec oracle_apply(const Decoder& dec, const BitVec& y, const BitVec& syndrome);

struct WaterfallPoint {
  std::size_t flips = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0.0;
};

struct WaterfallResult {
  std::vector<WaterfallPoint> curve;
  std::size_t threshold_flips = 0;  // largest flip count with rate >= target
  double threshold_fraction = 0.0;  // threshold_flips / m
};

// Bisection over planted-error weight; success = exact recovery of the
// planted error. Trials use per-trial seeds derived from (seed, index).
WaterfallResult waterfall_threshold(const SymplecticCode& code, const BpDecoder& dec,
                                    std::size_t trials, double success_target,
                                    uint64_t seed);

}  // namespace hdqi

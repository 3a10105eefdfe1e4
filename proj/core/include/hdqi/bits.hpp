#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hdqi {

// Bit-packed vector over F2. All arithmetic is word-parallel XOR/AND + popcount.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (v) w_[i >> 6] |= mask; else w_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }
  bool is_zero() const {
    for (uint64_t w : w_) if (w) return false;
    return true;
  }
  // parity of <a,b> = sum_i a_i b_i mod 2
  static bool dot(const BitVec& a, const BitVec& b) {
    uint64_t acc = 0;
    for (std::size_t k = 0; k < a.w_.size(); ++k) acc ^= a.w_[k] & b.w_[k];
    return std::popcount(acc) & 1u;
  }
  static std::size_t and_popcount(const BitVec& a, const BitVec& b) {
    std::size_t c = 0;
    for (std::size_t k = 0; k < a.w_.size(); ++k) c += std::popcount(a.w_[k] & b.w_[k]);
    return c;
  }

  int lowest_set() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return int(k * 64 + std::countr_zero(w_[k]));
    return -1;
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < w_.size(); ++k) {
      uint64_t w = w_[k];
      while (w) {
        out.push_back(k * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
    return out;
  }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }
  bool operator<(const BitVec& o) const { return w_ < o.w_; }

  const std::vector<uint64_t>& words() const { return w_; }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) if (get(i)) s[i] = '1';
    return s;
  }

  struct Hash {
    std::size_t operator()(const BitVec& v) const {
      std::size_t h = v.n_;
      for (uint64_t w : v.w_) h = h * 0x9e3779b97f4a7c15ull + w + (h >> 32);
      return h;
    }
  };

 private:
  std::size_t n_ = 0;
  std::vector<uint64_t> w_;
};

// Row-major bit-packed matrix over F2.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), row_(rows, BitVec(cols)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BitVec& row(std::size_t r) { return row_[r]; }
  const BitVec& row(std::size_t r) const { return row_[r]; }

  bool get(std::size_t r, std::size_t c) const { return row_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { row_[r].set(c, v); }

  BitVec column(std::size_t c) const {
    BitVec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) if (row_[r].get(c)) v.set(r, true);
    return v;
  }

  // y |-> M y  (y indexed by columns)
  BitVec mul(const BitVec& y) const {
    BitVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      if (BitVec::dot(row_[r], y)) out.set(r, true);
    return out;
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c : row_[r].ones()) t.set(c, r, true);
    return t;
  }

  std::size_t rank() const;

  // Basis of { y : M y = 0 }.
  std::vector<BitVec> kernel_basis() const;

  // One solution of M y = b, if consistent.
  std::optional<BitVec> solve(const BitVec& b) const;

  bool operator==(const BitMatrix& o) const { return rows_ == o.rows_ && row_ == o.row_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BitVec> row_;
};

// Incremental row basis: rows are inserted one at a time; insert() reports
// whether the row increased the rank.
class RowBasis {
 public:
  explicit RowBasis(std::size_t cols) : cols_(cols) {}
  bool insert(BitVec r);
  // Reduce r by the basis; returns the residual (zero iff r in span).
  BitVec reduce(BitVec r) const;
  bool in_span(const BitVec& r) const { return reduce(r).is_zero(); }
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t cols_;
  std::vector<BitVec> rows_;   // echelonized, pivot bit unique per row
  std::vector<int> pivots_;
};

// Echelon solver with combination tracking: solve M y = b and also express
// b as a combination of the ORIGINAL rows of M (used for group membership).
class SolveTracker {
 public:
  SolveTracker(std::size_t cols, std::size_t max_rows)
      : cols_(cols), max_rows_(max_rows) {}
  void insert(const BitVec& r);
  // If b is in the row span, return the combination c (over inserted rows,
  // width max_rows) with sum_{i in c} row_i = b.
  std::optional<BitVec> express(const BitVec& b) const;
  std::size_t rank() const { return rank_; }

 private:
  std::size_t cols_, max_rows_;
  std::size_t count_ = 0, rank_ = 0;
  std::vector<BitVec> rows_;   // echelonized residuals
  std::vector<BitVec> combo_;  // combination over original insertion order
  std::vector<int> pivots_;
};

}  // namespace hdqi

#include "hdqi/bits.hpp"

namespace hdqi {

std::size_t BitMatrix::rank() const {
  RowBasis basis(cols_);
  for (const auto& r : row_) basis.insert(r);
  return basis.rank();
}

std::vector<BitVec> BitMatrix::kernel_basis() const {
  // Column-echelon over an augmented identity: track column combinations.
  std::size_t m = cols_;
  std::vector<BitVec> col(m), tag(m);
  for (std::size_t c = 0; c < m; ++c) {
    col[c] = column(c);
    tag[c] = BitVec(m);
    tag[c].set(c, true);
  }
  std::vector<BitVec> kernel;
  std::vector<int> pivot_of_row;
  std::vector<BitVec*> done_cols, done_tags;
  for (std::size_t c = 0; c < m; ++c) {
    // reduce column c by previous pivots
    for (std::size_t p = 0; p < done_cols.size(); ++p) {
      int pr = pivot_of_row[p];
      if (col[c].get(std::size_t(pr))) {
        col[c] ^= *done_cols[p];
        tag[c] ^= *done_tags[p];
      }
    }
    int lead = col[c].lowest_set();
    if (lead < 0) {
      kernel.push_back(tag[c]);
    } else {
      pivot_of_row.push_back(lead);
      done_cols.push_back(&col[c]);
      done_tags.push_back(&tag[c]);
    }
  }
  return kernel;
}

std::optional<BitVec> BitMatrix::solve(const BitVec& b) const {
  // Gaussian elimination on the transposed system: find y with M y = b.
  // Work on columns of M as vectors in F2^rows.
  std::size_t m = cols_;
  std::vector<BitVec> col(m), tag(m);
  for (std::size_t c = 0; c < m; ++c) {
    col[c] = column(c);
    tag[c] = BitVec(m);
    tag[c].set(c, true);
  }
  BitVec rhs = b, y(m);
  std::vector<std::pair<BitVec, BitVec>> pivots;  // (reduced column, tag)
  for (std::size_t c = 0; c < m; ++c) {
    for (auto& [pc, pt] : pivots) {
      int lead = pc.lowest_set();
      if (col[c].get(std::size_t(lead))) {
        col[c] ^= pc;
        tag[c] ^= pt;
      }
    }
    if (!col[c].is_zero()) pivots.emplace_back(col[c], tag[c]);
  }
  for (auto& [pc, pt] : pivots) {
    int lead = pc.lowest_set();
    if (rhs.get(std::size_t(lead))) {
      rhs ^= pc;
      y ^= pt;
    }
  }
  if (!rhs.is_zero()) return std::nullopt;
  return y;
}

bool RowBasis::insert(BitVec r) {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (r.get(std::size_t(pivots_[i]))) r ^= rows_[i];
  int lead = r.lowest_set();
  if (lead < 0) return false;
  rows_.push_back(std::move(r));
  pivots_.push_back(lead);
  return true;
}

BitVec RowBasis::reduce(BitVec r) const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (r.get(std::size_t(pivots_[i]))) r ^= rows_[i];
  return r;
}

void SolveTracker::insert(const BitVec& r) {
  BitVec res = r, combo(max_rows_);
  combo.set(count_, true);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (res.get(std::size_t(pivots_[i]))) {
      res ^= rows_[i];
      combo ^= combo_[i];
    }
  ++count_;
  int lead = res.lowest_set();
  if (lead < 0) return;
  rows_.push_back(std::move(res));
  combo_.push_back(std::move(combo));
  pivots_.push_back(lead);
  ++rank_;
}

std::optional<BitVec> SolveTracker::express(const BitVec& b) const {
  BitVec res = b, combo(max_rows_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (res.get(std::size_t(pivots_[i]))) {
      res ^= rows_[i];
      combo ^= combo_[i];
    }
  if (!res.is_zero()) return std::nullopt;
  return combo;
}

}  // namespace hdqi

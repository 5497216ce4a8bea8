#include "fusionlab/fplinalg.hpp"

#include <algorithm>
#include <queue>

namespace fusionlab {

bool FpMat::is_identity() const {
  if (rows != cols) return false;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

std::size_t FpMat::nnz() const {
  std::size_t n = 0;
  for (auto v : a)
    if (v) ++n;
  return n;
}

FpMat fp_mul(const Fp& f, const FpMat& x, const FpMat& y) {
  FpMat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      std::uint8_t v = x.at(i, k);
      if (!v) continue;
      for (int j = 0; j < y.cols; ++j) {
        std::uint8_t w = y.at(k, j);
        if (w) z.at(i, j) = f.add(z.at(i, j), f.mul(v, w));
      }
    }
  return z;
}

std::vector<std::uint8_t> fp_apply(const Fp& f, const FpMat& m,
                                   const std::vector<std::uint8_t>& v) {
  std::vector<std::uint8_t> out(m.rows, 0);
  for (int i = 0; i < m.rows; ++i) {
    int acc = 0;
    for (int j = 0; j < m.cols; ++j) acc += m.at(i, j) * v[j];
    out[i] = static_cast<std::uint8_t>(acc % f.p);
  }
  return out;
}

int fp_rank(const Fp& f, FpMat m) {
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int piv = -1;
    for (int r = rank; r < m.rows; ++r)
      if (m.at(r, c)) { piv = r; break; }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(rank, j), m.at(piv, j));
    std::uint8_t inv = f.inv[m.at(rank, c)];
    for (int j = 0; j < m.cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), inv);
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      std::uint8_t v = m.at(r, c);
      if (!v) continue;
      for (int j = 0; j < m.cols; ++j)
        m.at(r, j) = f.sub(m.at(r, j), f.mul(v, m.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

// -- Echelon -------------------------------------------------------------------

namespace {
constexpr std::int64_t kPackedLimit = 1 << 16;
constexpr std::int64_t kPacked3Limit = 40960;
constexpr std::int64_t kDenseLimit = 1 << 13;

// bit-sliced arithmetic over F_3: a value is (lo, hi) with 1 = (1,0), 2 = (0,1)
inline void f3_add_into(std::uint64_t& al, std::uint64_t& ah, std::uint64_t bl,
                        std::uint64_t bh) {
  std::uint64_t sl = (bl & ~(al | ah)) | (al & ~(bl | bh)) | (ah & bh);
  std::uint64_t sh = (bh & ~(al | ah)) | (ah & ~(bl | bh)) | (al & bl);
  al = sl;
  ah = sh;
}
}  // namespace

Echelon::Echelon(int p, std::int64_t ncols, int aug_cols, std::uint64_t entry_cap)
    : fp_(p), ncols_(ncols), aug_cols_(aug_cols), entry_cap_(entry_cap) {
  if (p == 2 && ncols <= kPackedLimit)
    mode_ = Mode::Packed;
  else if (p == 3 && ncols <= kPacked3Limit)
    mode_ = Mode::Packed3;
  else if (ncols <= kDenseLimit)
    mode_ = Mode::Dense;
  else
    mode_ = Mode::Sparse;
  pivot_of_col_.assign(ncols_, -1);
  if (mode_ == Mode::Packed) {
    pscratch_.assign(static_cast<std::size_t>((ncols_ + 63) / 64), 0);
    pivbits_.assign(pscratch_.size(), 0);
  } else if (mode_ == Mode::Packed3) {
    const std::size_t words = static_cast<std::size_t>((ncols_ + 63) / 64);
    pscratch_.assign(2 * words, 0);  // lo plane then hi plane
    pivbits_.assign(words, 0);
  } else {
    scratch_.assign(static_cast<std::size_t>(ncols_), 0);
  }
  if (aug_cols_ > 0) aug_scratch_.assign(aug_cols_, 0);
}

std::int64_t Echelon::add_row(const SparseVec& row) {
  static const std::vector<std::uint8_t> empty;
  return add_row(row, empty);
}

std::int64_t Echelon::store_row(SparseVec row, std::vector<std::uint8_t> aug) {
  const std::int64_t slot = static_cast<std::int64_t>(pivcol_.size());
  const std::int64_t lead = row.front().first;
  // packed rows occupy full words regardless of sparsity
  if (mode_ == Mode::Packed || mode_ == Mode::Packed3)
    entries_ += static_cast<std::uint64_t>((ncols_ + 63) / 64) * (mode_ == Mode::Packed3 ? 2 : 1);
  else if (mode_ == Mode::Dense)
    entries_ += static_cast<std::uint64_t>(ncols_) / 8;
  else
    entries_ += row.size();
  if (entries_ > entry_cap_) throw cell_cap_exceeded("pivot storage exceeded elimination budget");
  switch (mode_) {
    case Mode::Packed: {
      std::vector<std::uint64_t> bits((ncols_ + 63) / 64, 0);
      for (auto& [c, v] : row) bits[c >> 6] |= 1ull << (c & 63);
      prows_.push_back(std::move(bits));
      break;
    }
    case Mode::Packed3: {
      const std::size_t words = static_cast<std::size_t>((ncols_ + 63) / 64);
      std::vector<std::uint64_t> bits(2 * words, 0);
      for (auto& [c, v] : row) bits[(v == 2 ? words : 0) + (c >> 6)] |= 1ull << (c & 63);
      prows_.push_back(std::move(bits));
      break;
    }
    case Mode::Dense: {
      std::vector<std::uint8_t> dense(ncols_, 0);
      for (auto& [c, v] : row) dense[c] = v;
      drows_.push_back(std::move(dense));
      break;
    }
    case Mode::Sparse:
      srows_.push_back(std::move(row));
      break;
  }
  if (aug_cols_ > 0) augs_.push_back(std::move(aug));
  pivot_of_col_[lead] = static_cast<std::int32_t>(slot);
  if (mode_ == Mode::Packed || mode_ == Mode::Packed3)
    pivbits_[lead >> 6] |= 1ull << (lead & 63);
  pivcol_.push_back(lead);
  order_.push_back(slot);
  rref_done_ = false;
  return lead;
}

std::int64_t Echelon::add_row(const SparseVec& row, const std::vector<std::uint8_t>& aug) {
  if (row.empty()) return -1;
  if (mode_ == Mode::Packed) {
    // bit scratch: cancel every pivot column, store the fully reduced rest
    for (auto& [c, v] : row) pscratch_[c >> 6] ^= 1ull << (c & 63);
    if (aug_cols_ > 0) {
      std::fill(aug_scratch_.begin(), aug_scratch_.end(), 0);
      for (std::size_t i = 0; i < aug.size(); ++i) aug_scratch_[i] = aug[i];
    }
    const std::size_t words = pscratch_.size();
    for (std::size_t w = 0; w < words;) {
      std::uint64_t x = pscratch_[w] & pivbits_[w];
      if (!x) { ++w; continue; }
      int bit = __builtin_ctzll(x);
      std::int64_t c = static_cast<std::int64_t>(w) * 64 + bit;
      std::int64_t slot = pivot_of_col_[c];
      const auto& prow = prows_[slot];
      for (std::size_t w2 = w; w2 < words; ++w2) pscratch_[w2] ^= prow[w2];
      if (aug_cols_ > 0)
        for (int i = 0; i < aug_cols_; ++i)
          aug_scratch_[i] ^= augs_[slot][i];
    }
    SparseVec out;
    for (std::size_t w2 = 0; w2 < words; ++w2) {
      std::uint64_t x = pscratch_[w2];
      pscratch_[w2] = 0;
      while (x) {
        int b = __builtin_ctzll(x);
        x &= x - 1;
        out.emplace_back(static_cast<std::int64_t>(w2) * 64 + b, 1);
      }
    }
    if (out.empty()) return -1;
    std::vector<std::uint8_t> a(aug_scratch_.begin(), aug_scratch_.end());
    return store_row(std::move(out), std::move(a));
  }

  if (mode_ == Mode::Packed3) {
    const std::size_t words = pivbits_.size();
    std::uint64_t* lo = pscratch_.data();
    std::uint64_t* hi = pscratch_.data() + words;
    for (auto& [c, v] : row) {
      // scratch is clean here, so loading is a plain store per plane
      if (v == 1)
        lo[c >> 6] |= 1ull << (c & 63);
      else
        hi[c >> 6] |= 1ull << (c & 63);
    }
    if (aug_cols_ > 0) {
      std::fill(aug_scratch_.begin(), aug_scratch_.end(), 0);
      for (std::size_t i = 0; i < aug.size(); ++i) aug_scratch_[i] = aug[i];
    }
    for (std::size_t w = 0; w < words;) {
      std::uint64_t x = (lo[w] | hi[w]) & pivbits_[w];
      if (!x) { ++w; continue; }
      int bit = __builtin_ctzll(x);
      std::int64_t c = static_cast<std::int64_t>(w) * 64 + bit;
      std::uint8_t v = ((lo[w] >> bit) & 1) | (((hi[w] >> bit) & 1) << 1);
      std::int64_t slot = pivot_of_col_[c];
      const auto& prow = prows_[slot];
      const std::uint64_t* plo = prow.data();
      const std::uint64_t* phi = prow.data() + words;
      // scratch -= v * pivot  <=>  scratch += (3 - v) * pivot
      if (v == 1) {
        for (std::size_t w2 = w; w2 < words; ++w2)
          f3_add_into(lo[w2], hi[w2], phi[w2], plo[w2]);  // + 2*pivot: planes swapped
      } else {
        for (std::size_t w2 = w; w2 < words; ++w2)
          f3_add_into(lo[w2], hi[w2], plo[w2], phi[w2]);  // + 1*pivot
      }
      if (aug_cols_ > 0) {
        const auto& pa = augs_[slot];
        for (int i = 0; i < aug_cols_; ++i)
          aug_scratch_[i] = fp_.sub(aug_scratch_[i], fp_.mul(v, pa[i]));
      }
    }
    SparseVec out;
    for (std::size_t w2 = 0; w2 < words; ++w2) {
      std::uint64_t x = lo[w2] | hi[w2];
      while (x) {
        int b = __builtin_ctzll(x);
        x &= x - 1;
        std::uint8_t v = ((lo[w2] >> b) & 1) | (((hi[w2] >> b) & 1) << 1);
        out.emplace_back(static_cast<std::int64_t>(w2) * 64 + b, v);
      }
      lo[w2] = 0;
      hi[w2] = 0;
    }
    if (out.empty()) return -1;
    std::vector<std::uint8_t> a(aug_scratch_.begin(), aug_scratch_.end());
    if (out.front().second == 2) {
      // normalize: multiply by 2
      for (auto& [c, v] : out) v = static_cast<std::uint8_t>(3 - v);
      for (auto& x : a) x = fp_.mul(x, 2);
    }
    return store_row(std::move(out), std::move(a));
  }

  // dense/sparse path shares the byte scratch
  std::priority_queue<std::int64_t, std::vector<std::int64_t>, std::greater<>> heap;
  std::vector<std::int64_t> touched;
  for (auto& [c, v] : row) {
    scratch_[c] = fp_.add(scratch_[c], v);
    heap.push(c);
    touched.push_back(c);
  }
  if (aug_cols_ > 0) {
    std::fill(aug_scratch_.begin(), aug_scratch_.end(), 0);
    for (std::size_t i = 0; i < aug.size(); ++i) aug_scratch_[i] = aug[i];
  }
  while (!heap.empty()) {
    std::int64_t c = heap.top();
    heap.pop();
    std::uint8_t v = scratch_[c];
    if (!v) continue;
    std::int64_t slot = pivot_of_col_[c];
    if (slot < 0) continue;  // free column, stays in scratch
    scratch_[c] = 0;
    const std::size_t mark = touched.size();
    subtract_into_scratch(slot, v, touched);
    for (std::size_t i = mark; i < touched.size(); ++i) heap.push(touched[i]);
    if (aug_cols_ > 0) {
      const auto& pa = augs_[slot];
      for (int i = 0; i < aug_cols_; ++i)
        aug_scratch_[i] = fp_.sub(aug_scratch_[i], fp_.mul(v, pa[i]));
    }
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  std::int64_t lead = -1;
  for (auto c : touched)
    if (scratch_[c]) { lead = c; break; }
  if (lead < 0) return -1;
  std::uint8_t inv = fp_.inv[scratch_[lead]];
  SparseVec out;
  for (auto c : touched) {
    if (scratch_[c]) out.emplace_back(c, fp_.mul(scratch_[c], inv));
    scratch_[c] = 0;
  }
  std::vector<std::uint8_t> a(aug_scratch_.begin(), aug_scratch_.end());
  if (aug_cols_ > 0 && inv != 1)
    for (auto& x : a) x = fp_.mul(x, inv);
  return store_row(std::move(out), std::move(a));
}

// scratch -= coeff * rows[slot] (skipping the pivot entry, already cleared);
// appends newly touched columns
void Echelon::subtract_into_scratch(std::size_t slot, std::uint8_t coeff,
                                    std::vector<std::int64_t>& touched) const {
  if (mode_ == Mode::Dense) {
    const auto& dr = drows_[slot];
    const std::int64_t lead = pivcol_[slot];
    for (std::int64_t j = lead + 1; j < ncols_; ++j) {
      if (!dr[j]) continue;
      scratch_[j] = fp_.sub(scratch_[j], fp_.mul(coeff, dr[j]));
      touched.push_back(j);
    }
  } else {
    const auto& sr = srows_[slot];
    for (std::size_t k = 1; k < sr.size(); ++k) {
      auto [j, w] = sr[k];
      scratch_[j] = fp_.sub(scratch_[j], fp_.mul(coeff, w));
      touched.push_back(j);
    }
  }
}

Echelon::Reduction Echelon::reduce(const SparseVec& row) const {
  Reduction res;
  if (aug_cols_ > 0) res.aug.assign(aug_cols_, 0);
  // independent scratch to keep const-ness honest
  SparseVec cur(row.begin(), row.end());
  std::sort(cur.begin(), cur.end());
  while (true) {
    // combine duplicates, find leading nonzero
    SparseVec norm;
    for (auto& [c, v] : cur) {
      if (!norm.empty() && norm.back().first == c)
        norm.back().second = fp_.add(norm.back().second, v);
      else
        norm.emplace_back(c, v);
    }
    cur.clear();
    std::int64_t lead = -1;
    std::uint8_t lv = 0;
    for (auto& [c, v] : norm) {
      if (v && lead < 0) { lead = c; lv = v; }
      if (v) cur.emplace_back(c, v);
    }
    if (lead < 0) { res.zero = true; return res; }
    std::int64_t slot = pivot_of_col_[lead];
    if (slot < 0) { res.residual = std::move(cur); return res; }
    // cur -= lv * rows[slot]
    SparseVec prow = row_as_sparse(slot);
    SparseVec merged;
    std::size_t i = 0, j = 0;
    while (i < cur.size() || j < prow.size()) {
      if (j >= prow.size() || (i < cur.size() && cur[i].first < prow[j].first)) {
        merged.push_back(cur[i++]);
      } else if (i >= cur.size() || prow[j].first < cur[i].first) {
        merged.emplace_back(prow[j].first, fp_.neg(fp_.mul(lv, prow[j].second)));
        ++j;
      } else {
        std::uint8_t v = fp_.sub(cur[i].second, fp_.mul(lv, prow[j].second));
        if (v) merged.emplace_back(cur[i].first, v);
        ++i;
        ++j;
      }
    }
    cur = std::move(merged);
    if (aug_cols_ > 0) {
      const auto& pa = augs_[slot];
      for (int k = 0; k < aug_cols_; ++k)
        res.aug[k] = fp_.sub(res.aug[k], fp_.mul(lv, pa[k]));
    }
  }
}

SparseVec Echelon::row_as_sparse(std::size_t slot) const {
  switch (mode_) {
    case Mode::Sparse:
      return srows_[slot];
    case Mode::Dense: {
      SparseVec out;
      const auto& dr = drows_[slot];
      for (std::int64_t j = 0; j < ncols_; ++j)
        if (dr[j]) out.emplace_back(j, dr[j]);
      return out;
    }
    case Mode::Packed: {
      SparseVec out;
      const auto& pr = prows_[slot];
      for (std::size_t w = 0; w < pr.size(); ++w) {
        std::uint64_t x = pr[w];
        while (x) {
          int b = __builtin_ctzll(x);
          x &= x - 1;
          out.emplace_back(static_cast<std::int64_t>(w) * 64 + b, 1);
        }
      }
      return out;
    }
    case Mode::Packed3: {
      SparseVec out;
      const auto& pr = prows_[slot];
      const std::size_t words = pr.size() / 2;
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t x = pr[w] | pr[words + w];
        while (x) {
          int b = __builtin_ctzll(x);
          x &= x - 1;
          std::uint8_t v = ((pr[w] >> b) & 1) | (((pr[words + w] >> b) & 1) << 1);
          out.emplace_back(static_cast<std::int64_t>(w) * 64 + b, v);
        }
      }
      return out;
    }
  }
  return {};
}

void Echelon::finalize_rref() {
  if (rref_done_) return;
  // process pivots by decreasing column; clean entries of every other row
  std::vector<std::int64_t> by_col = order_;
  std::sort(by_col.begin(), by_col.end(),
            [&](std::int64_t a, std::int64_t b) { return pivcol_[a] > pivcol_[b]; });
  for (std::int64_t slot : by_col) {
    const std::int64_t c = pivcol_[slot];
    for (std::int64_t other : order_) {
      if (other == slot || pivcol_[other] >= c) continue;
      // value of rows[other] at column c
      std::uint8_t v = 0;
      switch (mode_) {
        case Mode::Packed:
          v = (prows_[other][c >> 6] >> (c & 63)) & 1;
          break;
        case Mode::Packed3: {
          const std::size_t words = prows_[other].size() / 2;
          v = ((prows_[other][c >> 6] >> (c & 63)) & 1) |
              (((prows_[other][words + (c >> 6)] >> (c & 63)) & 1) << 1);
          break;
        }
        case Mode::Dense:
          v = drows_[other][c];
          break;
        case Mode::Sparse: {
          const auto& sr = srows_[other];
          auto it = std::lower_bound(sr.begin(), sr.end(), std::make_pair(SpIdx(c), std::uint8_t(0)),
                                     [](auto& x, auto& y) { return x.first < y.first; });
          if (it != sr.end() && it->first == c) v = it->second;
          break;
        }
      }
      if (!v) continue;
      // rows[other] -= v * rows[slot]
      switch (mode_) {
        case Mode::Packed: {
          auto& dst = prows_[other];
          const auto& src = prows_[slot];
          for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
          break;
        }
        case Mode::Packed3: {
          auto& dst = prows_[other];
          const auto& src = prows_[slot];
          const std::size_t words = dst.size() / 2;
          if (v == 1) {
            for (std::size_t w = 0; w < words; ++w)
              f3_add_into(dst[w], dst[words + w], src[words + w], src[w]);
          } else {
            for (std::size_t w = 0; w < words; ++w)
              f3_add_into(dst[w], dst[words + w], src[w], src[words + w]);
          }
          break;
        }
        case Mode::Dense: {
          auto& dst = drows_[other];
          const auto& src = drows_[slot];
          for (std::int64_t j = 0; j < ncols_; ++j)
            if (src[j]) dst[j] = fp_.sub(dst[j], fp_.mul(v, src[j]));
          break;
        }
        case Mode::Sparse: {
          SparseVec merged;
          const auto& a = srows_[other];
          const auto& b = srows_[slot];
          std::size_t i = 0, j = 0;
          while (i < a.size() || j < b.size()) {
            if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
              merged.push_back(a[i++]);
            } else if (i >= a.size() || b[j].first < a[i].first) {
              merged.emplace_back(b[j].first, fp_.neg(fp_.mul(v, b[j].second)));
              ++j;
            } else {
              std::uint8_t nv = fp_.sub(a[i].second, fp_.mul(v, b[j].second));
              if (nv) merged.emplace_back(a[i].first, nv);
              ++i;
              ++j;
            }
          }
          srows_[other] = std::move(merged);
          break;
        }
      }
      if (aug_cols_ > 0) {
        const auto& pa = augs_[slot];
        auto& da = augs_[other];
        for (int k = 0; k < aug_cols_; ++k) da[k] = fp_.sub(da[k], fp_.mul(v, pa[k]));
      }
    }
  }
  rref_done_ = true;
}

std::vector<std::int64_t> Echelon::pivot_columns() const {
  std::vector<std::int64_t> out = pivcol_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SparseVec> Echelon::kernel_basis() const {
  // kernel vectors indexed by free columns, canonical order
  std::vector<char> is_pivot(ncols_, 0);
  for (auto c : pivcol_) is_pivot[c] = 1;
  std::vector<std::int64_t> free_index(ncols_, -1);
  std::vector<std::int64_t> free_cols;
  for (std::int64_t c = 0; c < ncols_; ++c)
    if (!is_pivot[c]) {
      free_index[c] = static_cast<std::int64_t>(free_cols.size());
      free_cols.push_back(c);
    }
  std::vector<SparseVec> ker(free_cols.size());
  for (std::size_t i = 0; i < ker.size(); ++i) ker[i].emplace_back(free_cols[i], 1);
  for (std::int64_t slot : order_) {
    SparseVec r = row_as_sparse(static_cast<std::size_t>(slot));
    const std::int64_t pc = pivcol_[slot];
    for (auto& [c, v] : r) {
      if (c == pc) continue;
      if (free_index[c] >= 0) ker[free_index[c]].emplace_back(pc, fp_.neg(v));
    }
  }
  for (auto& k : ker) std::sort(k.begin(), k.end());
  return ker;
}

std::vector<SparseVec> Echelon::rows() const {
  std::vector<SparseVec> out;
  out.reserve(order_.size());
  for (std::int64_t slot : order_) out.push_back(row_as_sparse(static_cast<std::size_t>(slot)));
  return out;
}

std::vector<std::vector<std::uint8_t>> Echelon::row_augs() const { return augs_; }

}  // namespace fusionlab

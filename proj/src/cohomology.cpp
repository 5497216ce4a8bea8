#include "fusionlab/cohomology.hpp"

#include <algorithm>

namespace fusionlab {

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (a > UINT64_MAX - b) ? UINT64_MAX : a + b;
}

std::uint64_t pow_sat(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = sat_mul(r, base);
  return r;
}

}  // namespace

// -- BarComplex ----------------------------------------------------------------

BarComplex::BarComplex(GroupPtr grp, GModule mod) : grp_(std::move(grp)), mod_(std::move(mod)) {}

std::int64_t BarComplex::dim(int n) const {
  std::uint64_t v = sat_mul(pow_sat(grp_->order() - 1, n), mod_.dim());
  return static_cast<std::int64_t>(v);
}

std::uint64_t BarComplex::census(int n) const {
  const std::uint64_t m1 = grp_->order() - 1;
  const std::uint64_t d = mod_.dim();
  // module-action face
  std::uint64_t act = 0;
  for (std::uint64_t g = 1; g <= m1; ++g)
    act = sat_add(act, mod_.action(static_cast<int>(g)).nnz());
  std::uint64_t total = sat_mul(pow_sat(m1, n), act);
  // middle faces: tuples where the composed pair is not the identity
  std::uint64_t mid_one = sat_mul(sat_mul(pow_sat(m1, n + 1) - pow_sat(m1, n), 1), d);
  for (int i = 1; i <= n; ++i) total = sat_add(total, mid_one);
  // last face
  total = sat_add(total, sat_mul(pow_sat(m1, n + 1), d));
  return total;
}

std::int64_t BarComplex::coord(const std::vector<int>& tuple, int v) const {
  const std::int64_t m1 = static_cast<std::int64_t>(grp_->order()) - 1;
  std::int64_t idx = 0;
  for (int t : tuple) idx = idx * m1 + (t - 1);
  return idx * mod_.dim() + v;
}

void BarComplex::stream_rows_subset(int n, int part, int nparts,
                                    const std::function<bool(const SparseVec&)>& sink) const {
  const int m = static_cast<int>(grp_->order());
  if (m <= 1) return;  // no non-identity tuples
  const int d = mod_.dim();
  Fp fp(mod_.prime());
  std::vector<int> tup(n + 1, 1);
  SparseVec row;
  std::vector<int> sub(n, 0);

  // odometer over (n+1)-tuples of non-identity element ids; the subset keeps
  // tuples whose trailing coordinate falls in the partition class
  while (true) {
    if (nparts > 1 && (tup[n] - 1) % nparts != part) {
      int pos = n;
      while (pos >= 0) {
        if (++tup[pos] < m) break;
        tup[pos] = 1;
        --pos;
      }
      if (pos < 0) break;
      continue;
    }
    // face tuples shared by all v in the block
    // face 0: (g2..g_{n+1});  face i: compose at i;  face n+1: (g1..gn)
    const std::int64_t face0 =
        [&] {
          for (int i = 0; i < n; ++i) sub[i] = tup[i + 1];
          return n == 0 ? 0 : coord(sub, 0) / d;
        }();
    const std::int64_t facelast =
        [&] {
          for (int i = 0; i < n; ++i) sub[i] = tup[i];
          return n == 0 ? 0 : coord(sub, 0) / d;
        }();
    std::vector<std::int64_t> facemid(n, -1);
    for (int i = 1; i <= n; ++i) {
      int h = grp_->mul(tup[i - 1], tup[i]);
      if (h == 0) continue;  // normalized: dropped
      for (int k = 0; k < n; ++k)
        sub[k] = (k < i - 1) ? tup[k] : (k == i - 1 ? h : tup[k + 1]);
      facemid[i - 1] = coord(sub, 0) / d;
    }
    const FpMat& act = mod_.action(tup[0]);
    for (int v = 0; v < d; ++v) {
      row.clear();
      for (int w = 0; w < d; ++w) {
        std::uint8_t a = act.at(v, w);
        if (a) row.emplace_back(face0 * d + w, a);
      }
      std::uint8_t sgn = 1;
      for (int i = 1; i <= n; ++i) {
        sgn = fp.neg(sgn);
        if (facemid[i - 1] >= 0) row.emplace_back(facemid[i - 1] * d + v, sgn);
      }
      sgn = fp.neg(sgn);
      row.emplace_back(facelast * d + v, sgn);
      // combine duplicate columns
      std::sort(row.begin(), row.end(),
                [](auto& x, auto& y) { return x.first < y.first; });
      SparseVec out;
      for (auto& [c, val] : row) {
        if (!out.empty() && out.back().first == c)
          out.back().second = fp.add(out.back().second, val);
        else
          out.emplace_back(c, val);
      }
      out.erase(std::remove_if(out.begin(), out.end(), [](auto& e) { return e.second == 0; }),
                out.end());
      if (!sink(out)) return;
    }
    // advance odometer
    int pos = n;
    while (pos >= 0) {
      if (++tup[pos] < m) break;
      tup[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
  }
}

void BarComplex::stream_cols(int n, const std::function<bool(const SparseVec&)>& sink) const {
  const int m = static_cast<int>(grp_->order());
  if (m <= 1) return;
  const std::int64_t m1 = m - 1;
  const int d = mod_.dim();
  Fp fp(mod_.prime());
  const std::uint8_t sgn_last = (n + 1) % 2 ? fp.neg(1) : 1;

  auto tup_index = [&](const std::vector<int>& t) {
    std::int64_t idx = 0;
    for (int x : t) idx = idx * m1 + (x - 1);
    return idx;
  };

  std::vector<int> tau(n, 1);
  std::vector<int> big(n + 1, 1);
  SparseVec col;
  while (true) {
    const std::int64_t tau_idx = n == 0 ? 0 : tup_index(tau);
    for (int v = 0; v < d; ++v) {
      col.clear();
      // module-action face: rows ((g, tau), w) with coefficient A(g)(w, v)
      for (int g = 1; g < m; ++g) {
        const FpMat& a = mod_.action(g);
        // row tuple (g, tau)
        std::int64_t base = g - 1;
        for (int i = 0; i < n; ++i) base = base * m1 + (tau[i] - 1);
        for (int w = 0; w < d; ++w) {
          std::uint8_t c = a.at(w, v);
          if (c) col.emplace_back(base * d + w, c);
        }
      }
      // middle faces: factor tau_i = a*b over non-identity pairs
      std::uint8_t sgn = 1;
      for (int i = 1; i <= n; ++i) {
        sgn = fp.neg(sgn);
        for (int a = 1; a < m; ++a) {
          if (a == tau[i - 1]) continue;  // b would be the identity
          int b = grp_->mul(grp_->inv(a), tau[i - 1]);
          // row tuple (tau_1..tau_{i-1}, a, b, tau_{i+1}..tau_n)
          for (int k = 0; k < i - 1; ++k) big[k] = tau[k];
          big[i - 1] = a;
          big[i] = b;
          for (int k = i; k < n; ++k) big[k + 1] = tau[k];
          col.emplace_back(tup_index(big) * d + v, sgn);
        }
      }
      // last face: rows ((tau, g), v)
      for (int g = 1; g < m; ++g) {
        std::int64_t base = tau_idx;
        base = base * m1 + (g - 1);
        col.emplace_back(base * d + v, sgn_last);
      }
      std::sort(col.begin(), col.end(),
                [](auto& x, auto& y) { return x.first < y.first; });
      SparseVec out;
      for (auto& [c, val] : col) {
        if (!out.empty() && out.back().first == c)
          out.back().second = fp.add(out.back().second, val);
        else
          out.emplace_back(c, val);
      }
      out.erase(std::remove_if(out.begin(), out.end(), [](auto& e) { return e.second == 0; }),
                out.end());
      if (!sink(out)) return;
    }
    if (n == 0) break;
    int pos = n - 1;
    while (pos >= 0) {
      if (++tau[pos] < m) break;
      tau[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
  }
}

// -- HBasis ----------------------------------------------------------------------

std::vector<std::uint8_t> HBasis::coordinates(const std::vector<std::uint8_t>& cocycle) const {
  SparseVec sv;
  for (std::size_t i = 0; i < cocycle.size(); ++i)
    if (cocycle[i]) sv.emplace_back(static_cast<std::int64_t>(i), cocycle[i]);
  return coordinates_sparse(sv);
}

std::vector<std::uint8_t> HBasis::coordinates_sparse(const SparseVec& cocycle) const {
  if (dim == 0) {
    auto red = span->reduce(cocycle);
    if (!red.zero) throw Error("NotACocycle", "vector is not in the cocycle span of this basis");
    return {};
  }
  auto red = span->reduce(cocycle);
  if (!red.zero)
    throw Error("NotACocycle", "vector is not in the cocycle span of this basis");
  // reduce() accumulates the negated combination
  Fp fp(prime);
  std::vector<std::uint8_t> out(red.aug.begin(), red.aug.end());
  for (auto& v : out) v = fp.neg(v);
  return out;
}

// -- ComplexCohomology -------------------------------------------------------------

ComplexCohomology::ComplexCohomology(std::shared_ptr<const CochainComplex> cx, Budget budget)
    : cx_(std::move(cx)), budget_(budget) {}

// Kernel of d^n: eliminate a structured row subset (a couple of trailing-face
// blocks, roughly 2x square), take its kernel as a candidate, then verify the
// candidate against every row with a streaming dot-product pass. Violating
// rows join the elimination and the pass repeats; on a clean pass the
// candidate kernel equals ker d^n exactly.
const std::vector<SparseVec>& ComplexCohomology::cocycles(int n) {
  auto it = kernel_.find(n);
  if (it != kernel_.end()) return it->second;
  const std::uint64_t cells = cx_->census(n);
  if (cells > budget_.cell_cap)
    throw cell_cap_exceeded("coboundary exceeds cell budget");

  const int p = cx_->prime();
  Fp fp(p);
  const std::int64_t ncols = cx_->dim(n);
  if (ncols == 0) return kernel_[n] = {};

  const int nparts = cx_->row_parts(n);
  // trailing-face blocks in hashed order until a block adds no new rank
  std::vector<int> part_order(nparts);
  for (int i = 0; i < nparts; ++i) part_order[i] = i;
  std::sort(part_order.begin(), part_order.end(), [&](int a, int b) {
    auto h = [](std::uint64_t x) {
      x ^= x >> 33; x *= 0xff51afd7ed558ccdull; x ^= x >> 33;
      return x;
    };
    return h(a) < h(b) || (h(a) == h(b) && a < b);
  });

  Echelon ech(p, ncols, 0, budget_.pivot_entry_cap);
  for (int i = 0; i < nparts; ++i) {
    const std::int64_t before = ech.rank();
    cx_->stream_rows_subset(n, part_order[i], nparts, [&](const SparseVec& row) {
      ech.add_row(row);
      return ech.rank() < ncols;
    });
    if (ech.rank() == ncols) break;
    if (i >= 1 && ech.rank() == before) break;  // saturating: hand over to verification
  }

  std::vector<SparseVec> kernel;
  for (int round = 0;; ++round) {
    if (ech.rank() == ncols) { kernel.clear(); break; }
    ech.finalize_rref();
    kernel = ech.kernel_basis();
    const std::size_t k = kernel.size();
    std::vector<SparseVec> bad;
    constexpr std::size_t kBadCap = 16384;
    if (p == 2) {
      // packed candidate: one bitset row per coordinate
      const std::size_t words = (k + 63) / 64;
      std::vector<std::uint64_t> K(static_cast<std::size_t>(ncols) * words, 0);
      for (std::size_t j = 0; j < k; ++j)
        for (auto& [c, v] : kernel[j])
          K[static_cast<std::size_t>(c) * words + (j >> 6)] |= 1ull << (j & 63);
      std::vector<std::uint64_t> acc(words);
      cx_->stream_rows(n, [&](const SparseVec& row) {
        std::fill(acc.begin(), acc.end(), 0);
        for (auto& [c, v] : row) {
          const std::uint64_t* kr = &K[static_cast<std::size_t>(c) * words];
          for (std::size_t w = 0; w < words; ++w) acc[w] ^= kr[w];
        }
        for (std::size_t w = 0; w < words; ++w)
          if (acc[w]) {
            bad.push_back(row);
            return bad.size() < kBadCap;
          }
        return true;
      });
    } else {
      std::vector<std::uint8_t> K(static_cast<std::size_t>(ncols) * k, 0);
      for (std::size_t j = 0; j < k; ++j)
        for (auto& [c, v] : kernel[j]) K[static_cast<std::size_t>(c) * k + j] = v;
      std::vector<std::uint32_t> acc(k);
      cx_->stream_rows(n, [&](const SparseVec& row) {
        std::fill(acc.begin(), acc.end(), 0);
        for (auto& [c, v] : row) {
          const std::uint8_t* kr = &K[static_cast<std::size_t>(c) * k];
          for (std::size_t j = 0; j < k; ++j) acc[j] += static_cast<std::uint32_t>(v) * kr[j];
        }
        for (std::size_t j = 0; j < k; ++j)
          if (acc[j] % p != 0) {
            bad.push_back(row);
            return bad.size() < kBadCap;
          }
        return true;
      });
    }
    if (bad.empty()) break;
    for (const auto& row : bad) ech.add_row(row);
    if (round > 256)
      throw Error("KernelLoop", "verified kernel did not converge");
  }
  return kernel_[n] = std::move(kernel);
}

DegreeDim ComplexCohomology::h_dim(int n) {
  DegreeDim out;
  out.cells = std::max(cx_->census(n), n > 0 ? cx_->census(n - 1) : 0);
  if (cx_->census(n) > budget_.cell_cap ||
      (n > 0 && cx_->census(n - 1) > budget_.cell_cap))
    return out;  // skipped
  try {
    std::int64_t zn = static_cast<std::int64_t>(cocycles(n).size());
    std::int64_t bn = (n == 0) ? 0 : rank_d(n - 1);
    out.dim = zn - bn;
  } catch (const Error& e) {
    if (e.code() != "CellCapExceeded") throw;
    // pivot storage blowup surfaces as a skip as well
  }
  return out;
}

const HBasis& ComplexCohomology::h_basis(int n) {
  auto it = basis_.find(n);
  if (it != basis_.end()) return it->second;
  const std::uint64_t cells = std::max(cx_->census(n), n > 0 ? cx_->census(n - 1) : 0);
  if (cells > budget_.cell_cap) throw cell_cap_exceeded("coboundary exceeds cell budget");

  const int p = cx_->prime();
  const std::int64_t ncols = cx_->dim(n);

  const std::vector<SparseVec>& kernel = cocycles(n);

  // image columns of d^{n-1}
  std::vector<SparseVec> image_cols;
  if (n > 0) {
    const std::int64_t src = cx_->dim(n - 1);
    image_cols.reserve(static_cast<std::size_t>(src));
    cx_->stream_cols(n - 1, [&](const SparseVec& col) {
      image_cols.push_back(col);
      return true;
    });
  }

  // pass 1: find which kernel vectors extend the image span
  std::vector<std::size_t> accepted;
  {
    Echelon span(p, ncols, 0, budget_.pivot_entry_cap);
    for (const auto& col : image_cols) span.add_row(col);
    for (std::size_t i = 0; i < kernel.size(); ++i)
      if (span.add_row(kernel[i]) >= 0) accepted.push_back(i);
  }

  // pass 2: rebuild with aug tracking on the accepted representatives
  HBasis hb;
  hb.degree = n;
  hb.prime = p;
  hb.space_dim = ncols;
  hb.dim = static_cast<std::int64_t>(accepted.size());
  hb.span = std::make_shared<Echelon>(p, ncols, static_cast<int>(accepted.size()),
                                      budget_.pivot_entry_cap);
  for (const auto& col : image_cols) hb.span->add_row(col);
  for (std::size_t k = 0; k < accepted.size(); ++k) {
    std::vector<std::uint8_t> aug(accepted.size(), 0);
    aug[k] = 1;
    hb.span->add_row(kernel[accepted[k]], aug);
    std::vector<std::uint8_t> dense(static_cast<std::size_t>(ncols), 0);
    for (auto& [c, v] : kernel[accepted[k]]) dense[c] = v;
    hb.reps.push_back(std::move(dense));
  }
  return basis_.emplace(n, std::move(hb)).first->second;
}

// -- entry points -------------------------------------------------------------------

std::vector<DegreeDim> bar_cohomology_dims(GroupPtr grp, const GModule& mod, int n_max,
                                           const Budget& budget) {
  auto cx = std::make_shared<BarComplex>(grp, mod);
  ComplexCohomology calc(cx, budget);
  std::vector<DegreeDim> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(calc.h_dim(n));
  return out;
}

SiteCohomology site_cohomology(const GModule& ambient_mod, const Subgroup& sub,
                               const Budget& budget) {
  SiteCohomology sc;
  sc.site = make_site(ambient_mod, sub);
  sc.cx = std::make_shared<BarComplex>(sc.site.local, sc.site.mod);
  sc.calc = std::make_shared<ComplexCohomology>(sc.cx, budget);
  return sc;
}

FpMat conjugation_pullback(const GModule& ambient_mod, const Site& s_site, const HBasis& hs,
                           const Site& p_site, const HBasis& hp, int g) {
  const int n = hs.degree;
  const int d = ambient_mod.dim();
  const GroupPtr& amb = ambient_mod.group();
  Fp fp(ambient_mod.prime());
  const FpMat& twist = ambient_mod.action_inv(g);

  const std::int64_t mp1 = static_cast<std::int64_t>(p_site.local->order()) - 1;
  std::int64_t target_dim = hp.space_dim;
  FpMat out(static_cast<int>(hp.dim), static_cast<int>(hs.dim));
  if (hs.dim == 0 || hp.dim == 0) return out;

  const std::int64_t ms1 = static_cast<std::int64_t>(s_site.local->order()) - 1;

  // precompute the conjugated tuple entry map: local p id -> local s id
  std::vector<std::int64_t> conj_of(p_site.local->order(), -1);
  for (std::size_t i = 1; i < p_site.local->order(); ++i) {
    int a = p_site.to_ambient(static_cast<int>(i));
    int c = amb->conj(g, a);
    int sl = s_site.from_ambient[c];
    if (sl < 0)
      throw Error("BadConjugation", "conjugate does not land in the target subgroup");
    conj_of[i] = sl;
  }

  std::vector<std::uint8_t> target(static_cast<std::size_t>(target_dim));
  std::vector<int> tup(n, 1);
  for (std::size_t col = 0; col < hs.reps.size(); ++col) {
    const auto& rep = hs.reps[col];
    std::fill(target.begin(), target.end(), 0);
    if (n == 0) {
      // degree 0: value is just the twisted module element
      for (int v = 0; v < d; ++v) {
        int acc = 0;
        for (int w = 0; w < d; ++w) acc += twist.at(v, w) * rep[w];
        target[v] = static_cast<std::uint8_t>(acc % fp.p);
      }
    } else {
      std::fill(tup.begin(), tup.end(), 1);
      std::int64_t pidx = 0;
      while (true) {
        // source index of the conjugated tuple
        std::int64_t sidx = 0;
        for (int i = 0; i < n; ++i) sidx = sidx * ms1 + (conj_of[tup[i]] - 1);
        // target block = twist * source block
        for (int v = 0; v < d; ++v) {
          int acc = 0;
          for (int w = 0; w < d; ++w) acc += twist.at(v, w) * rep[sidx * d + w];
          target[pidx * d + v] = static_cast<std::uint8_t>(acc % fp.p);
        }
        ++pidx;
        int pos = n - 1;
        while (pos >= 0) {
          if (++tup[pos] <= mp1) break;
          tup[pos] = 1;
          --pos;
        }
        if (pos < 0) break;
      }
    }
    auto coords = hp.coordinates(target);
    for (std::size_t r = 0; r < coords.size(); ++r)
      out.at(static_cast<int>(r), static_cast<int>(col)) = coords[r];
  }
  return out;
}

FpMat kappa_map(const GModule& ambient_mod, int p, const Site& s_site, const HBasis& hs,
                const Site& p_site, const HBasis& hp, int g) {
  if (auto w = pilocal_incompatibility(ambient_mod, p, {p_site.sub}))
    throw incompatible_action("module action does not kill O^p of the centralizer");
  return conjugation_pullback(ambient_mod, s_site, hs, p_site, hp, g);
}

}  // namespace fusionlab

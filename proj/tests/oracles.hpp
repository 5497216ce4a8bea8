// Independent small-scale oracles for the test suites. Everything here is
// deliberately self-contained: its own closure, its own dense elimination,
// and the unnormalized inhomogeneous bar complex, so it shares no code path
// with the library machinery it checks.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

// permutations as image vectors over 0..n-1
using Im = std::vector<int>;

inline Im compose(const Im& a, const Im& b) {  // (a*b)(x) = a(b(x))
  Im r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

struct Table {
  int n = 0;                    // order
  std::vector<int> mul;         // n*n
  std::vector<int> inv;         // n
  std::vector<Im> elems;        // sorted
};

inline Table close(int degree, const std::vector<Im>& gens) {
  Im id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  std::set<Im> seen{id};
  std::vector<Im> work{id};
  for (std::size_t h = 0; h < work.size(); ++h)
    for (const auto& g : gens) {
      Im y = compose(work[h], g);
      if (seen.insert(y).second) work.push_back(y);
    }
  Table t;
  t.elems.assign(seen.begin(), seen.end());
  t.n = static_cast<int>(t.elems.size());
  auto idx = [&](const Im& x) {
    return static_cast<int>(
        std::lower_bound(t.elems.begin(), t.elems.end(), x) - t.elems.begin());
  };
  t.mul.resize(static_cast<std::size_t>(t.n) * t.n);
  t.inv.resize(t.n);
  for (int a = 0; a < t.n; ++a) {
    for (int b = 0; b < t.n; ++b) t.mul[a * t.n + b] = idx(compose(t.elems[a], t.elems[b]));
    Im v(degree);
    for (int i = 0; i < degree; ++i) v[t.elems[a][i]] = i;
    t.inv[a] = idx(v);
  }
  return t;
}

inline int dense_rank(std::vector<std::vector<int>> m, int p) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] % p != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    int lead = ((m[rank][c] % p) + p) % p;
    int li = 0;
    for (int x = 1; x < p; ++x)
      if (lead * x % p == 1) li = x;
    for (auto& v : m[rank]) v = ((v % p) + p) % p * li % p;
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      int f = ((m[r][c] % p) + p) % p;
      if (!f) continue;
      for (int cc = 0; cc < cols; ++cc)
        m[r][cc] = ((m[r][cc] - f * m[rank][cc]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// unnormalized inhomogeneous bar coboundary C^k -> C^{k+1} with a per-element
// matrix action (row-major dim x dim, entries mod p)
inline std::vector<std::vector<int>> bar_d(const Table& t,
                                           const std::vector<std::vector<int>>& act, int dim,
                                           int p, int k) {
  const int n = t.n;
  auto powl = [&](int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= n;
    return r;
  };
  const long long src = powl(k) * dim, dst = powl(k + 1) * dim;
  std::vector<std::vector<int>> d(static_cast<std::size_t>(dst),
                                  std::vector<int>(static_cast<std::size_t>(src), 0));
  std::vector<int> tup(k + 1, 0);
  long long row_block = 0;
  while (true) {
    // face 0 with action of tup[0]; middle compositions; last drop
    long long f0 = 0;
    for (int i = 1; i <= k; ++i) f0 = f0 * n + tup[i];
    for (int v = 0; v < dim; ++v)
      for (int w = 0; w < dim; ++w) {
        int a = act[tup[0]][v * dim + w];
        if (a) d[row_block * dim + v][f0 * dim + w] = (d[row_block * dim + v][f0 * dim + w] + a) % p;
      }
    int sgn = 1;
    for (int i = 1; i <= k; ++i) {
      sgn = -sgn;
      long long fi = 0;
      for (int j = 0; j <= k; ++j) {
        if (j == i - 1) fi = fi * n + t.mul[tup[i - 1] * n + tup[i]];
        else if (j != i) fi = fi * n + tup[j];
      }
      for (int v = 0; v < dim; ++v)
        d[row_block * dim + v][fi * dim + v] =
            ((d[row_block * dim + v][fi * dim + v] + sgn) % p + p) % p;
    }
    sgn = -sgn;
    long long fl = 0;
    for (int j = 0; j < k; ++j) fl = fl * n + tup[j];
    for (int v = 0; v < dim; ++v)
      d[row_block * dim + v][fl * dim + v] =
          ((d[row_block * dim + v][fl * dim + v] + sgn) % p + p) % p;
    // advance
    ++row_block;
    int pos = k;
    while (pos >= 0) {
      if (++tup[pos] < n) break;
      tup[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return d;
}

// H^0..H^{nmax} dimensions by dense ranks of the unnormalized bar complex
inline std::vector<int> cohomology_dims(const Table& t, const std::vector<std::vector<int>>& act,
                                        int dim, int p, int nmax) {
  std::vector<int> ranks;  // rank of d^k
  for (int k = 0; k <= nmax; ++k) ranks.push_back(dense_rank(bar_d(t, act, dim, p, k), p));
  std::vector<int> out;
  long long sz = dim;
  for (int k = 0; k <= nmax; ++k) {
    long long zk = sz - ranks[k];
    long long bk = k == 0 ? 0 : ranks[k - 1];
    out.push_back(static_cast<int>(zk - bk));
    sz *= t.n;
  }
  return out;
}

inline std::vector<std::vector<int>> trivial_action(const Table& t, int dim) {
  std::vector<int> id(dim * dim, 0);
  for (int i = 0; i < dim; ++i) id[i * dim + i] = 1;
  return std::vector<std::vector<int>>(t.n, id);
}

// brute-force count of all subgroups of a small group (subset closure scan)
inline int count_subgroups_brute(const Table& t) {
  // enumerate subsets containing the identity that are closed
  const int n = t.n;
  int id0 = 0;
  for (int i = 0; i < n; ++i) {
    bool is_id = true;
    for (int j = 0; j < n && is_id; ++j)
      if (t.mul[i * n + j] != j) is_id = false;
    if (is_id) { id0 = i; break; }
  }
  std::set<std::set<int>> subs;
  const int others = n;  // subsets over all elements, required to contain id
  if (n > 20) return -1;  // guard: brute force only for tiny groups
  for (std::uint64_t mask = 0; mask < (1ull << others); ++mask) {
    if (!(mask & (1ull << id0))) continue;
    std::set<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1ull << i)) s.insert(i);
    bool closed = true;
    for (int a : s) {
      for (int b : s)
        if (!s.count(t.mul[a * n + b])) { closed = false; break; }
      if (!closed) break;
    }
    if (closed) subs.insert(s);
  }
  return static_cast<int>(subs.size());
}

// standard small generator sets (1-based cycle data written as image vectors)
inline std::vector<Im> gens_cyclic(int n) {
  Im c(n);
  for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return {c};
}
inline std::vector<Im> gens_s3() { return {{1, 0, 2}, {1, 2, 0}}; }
inline std::vector<Im> gens_s4() { return {{1, 0, 2, 3}, {1, 2, 3, 0}}; }
inline std::vector<Im> gens_d8() { return {{1, 2, 3, 0}, {2, 1, 0, 3}}; }
inline std::vector<Im> gens_v4() { return {{1, 0, 3, 2}, {2, 3, 0, 1}}; }

}  // namespace oracle

#pragma once

// Determinantal-divisor oracle: d_k = gcd of k x k minors, computed by
// cofactor expansion over every row/column subset.  Deliberately shares no
// code with the library's elimination routines.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using Grid = std::vector<std::vector<long long>>;

inline long long cofactor_det(const Grid& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  long long s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    Grid sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<long long> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      sub.push_back(row);
    }
    long long term = m[0][c] * cofactor_det(sub);
    s += (c % 2 == 0) ? term : -term;
  }
  return s;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// g[k-1] = gcd of all k x k minors, for k = 1..min(rows, cols).
inline std::vector<long long> minor_gcds(const Grid& m) {
  const std::size_t r = m.size(), c = r ? m[0].size() : 0;
  std::vector<long long> out;
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(r, k, 0, cur, rs);
    subsets(c, k, 0, cur, cs);
    long long g = 0;
    for (const auto& ri : rs)
      for (const auto& ci : cs) {
        Grid sub(k, std::vector<long long>(k));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub[a][b] = m[ri[a]][ci[b]];
        g = std::gcd(g, cofactor_det(sub));
      }
    out.push_back(g);
  }
  return out;
}

/// Expected Smith invariant factors: d_k = g_k / g_{k-1}, zero once g_k = 0.
inline std::vector<long long> smith_from_minors(const Grid& m) {
  auto g = minor_gcds(m);
  std::vector<long long> d;
  long long prev = 1;
  for (auto x : g) {
    if (x == 0 || prev == 0) {
      d.push_back(0);
      prev = 0;
      continue;
    }
    d.push_back(x / prev);
    prev = x;
  }
  return d;
}

/// Rank by the largest nonvanishing minor order.
inline std::size_t rank_from_minors(const Grid& m) {
  auto g = minor_gcds(m);
  std::size_t r = 0;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g[k] != 0) r = k + 1;
  return r;
}

// Same invariants for matrices of at most 3 x 3 held in a flat row-major
// array; no allocation, for exhaustive sweeps.
struct SmallMinors {
  std::size_t count = 0;  // min(rows, cols)
  long long g[3] = {0, 0, 0};
};

inline SmallMinors small_minor_gcds(const long long* e, std::size_t r, std::size_t c) {
  SmallMinors out;
  out.count = std::min(r, c);
  auto at = [&](std::size_t i, std::size_t j) { return e[i * c + j]; };
  for (std::size_t i = 0; i < r * c && out.g[0] != 1; ++i) out.g[0] = std::gcd(out.g[0], e[i]);
  if (out.count >= 2)
    for (std::size_t r0 = 0; r0 < r; ++r0)
      for (std::size_t r1 = r0 + 1; r1 < r; ++r1)
        for (std::size_t c0 = 0; c0 < c; ++c0)
          for (std::size_t c1 = c0 + 1; c1 < c && out.g[1] != 1; ++c1)
            out.g[1] = std::gcd(out.g[1], at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0));
  if (out.count == 3) {
    long long d = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
                  at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
                  at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    out.g[2] = d < 0 ? -d : d;
  }
  return out;
}

// |det| of an n x n row-major array, n <= 3.
inline long long small_abs_det(const long long* e, std::size_t n) {
  long long d = 1;
  if (n == 1) d = e[0];
  if (n == 2) d = e[0] * e[3] - e[1] * e[2];
  if (n == 3)
    d = e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6]) + e[2] * (e[3] * e[7] - e[4] * e[6]);
  return d < 0 ? -d : d;
}

}  // namespace oracle

#pragma once

// Independent reference computations for the test suites. Everything here is
// plain machine-integer brute force over coefficient boxes; none of it calls
// into the library's enumeration, reduction or cone code.

#include <conewalk/lattice.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <vector>

namespace oracle {

using Vec = std::vector<long long>;
using Gram = std::vector<std::vector<long long>>;

inline long long pair(const Gram& g, const Vec& x, const Vec& y) {
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * g[i][j] * y[j];
  return s;
}

/// Visits every vector with all coordinates in [-bound, bound].
inline void box_scan(std::size_t dim, long long bound, const std::function<void(const Vec&)>& f) {
  Vec v(dim, -bound);
  while (true) {
    f(v);
    std::size_t i = 0;
    while (i < dim && v[i] == bound) v[i++] = -bound;
    if (i == dim) return;
    ++v[i];
  }
}

inline long long content(const Vec& v) {
  long long g = 0;
  for (long long c : v) {
    long long a = std::llabs(c), b = g;
    while (b) {
      long long t = a % b;
      a = b;
      b = t;
    }
    g = a;
  }
  return g;
}

/// Vectors of norm `target` with 0 <= <v,H> <= max_degree and the extra
/// pairings, found by scanning the box |coords| <= bound.
inline std::vector<Vec> classes_in_box(const Gram& g, const Vec& h, long long target,
                                       long long max_degree, long long bound,
                                       const std::vector<std::pair<Vec, long long>>& extra = {},
                                       bool primitive = false) {
  std::vector<Vec> out;
  box_scan(h.size(), bound, [&](const Vec& v) {
    if (pair(g, v, v) != target) return;
    long long d = pair(g, v, h);
    if (d < 0 || d > max_degree) return;
    for (const auto& [c, val] : extra)
      if (pair(g, v, c) != val) return;
    if (content(v) == 0) return;
    if (primitive && content(v) != 1) return;
    out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Classes a*H - sum b_i E_i on the blow-up of the plane at n points with
/// C^2 = -1 and K.C = -1, for 0 <= a <= a_max. Enumerates b with
/// sum b_i^2 = a^2 + 1 and sum b_i = 3a - 1 directly (Cauchy-Schwarz pruning).
inline std::vector<Vec> minus_one_classes_blowup(std::size_t n, long long a_max) {
  std::vector<Vec> out;
  for (long long a = 0; a <= a_max; ++a) {
    Vec b;
    std::function<void(long long, long long)> rec = [&](long long rem_sq, long long rem_sum) {
      const long long left = static_cast<long long>(n - b.size());
      if (left == 0) {
        if (rem_sq == 0 && rem_sum == 0) {
          Vec v{a};
          for (long long x : b) v.push_back(-x);
          out.push_back(v);
        }
        return;
      }
      if (rem_sum * rem_sum > left * rem_sq) return;
      long long m = 0;
      while ((m + 1) * (m + 1) <= rem_sq) ++m;
      for (long long x = -m; x <= m; ++x) {
        b.push_back(x);
        rec(rem_sq - x * x, rem_sum - x);
        b.pop_back();
      }
    };
    rec(a * a + 1, 3 * a - 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Vec to_vec(const conewalk::LatticeVector& v) {
  Vec out;
  for (const auto& c : v.coords()) out.push_back(static_cast<long long>(c));
  return out;
}

inline std::vector<Vec> to_vecs(const std::vector<conewalk::LatticeVector>& vs) {
  std::vector<Vec> out;
  for (const auto& v : vs) out.push_back(to_vec(v));
  return out;
}

inline Gram to_gram(const conewalk::LatticeSpace& L) {
  Gram g(L.rank(), Vec(L.rank()));
  for (std::size_t i = 0; i < L.rank(); ++i)
    for (std::size_t j = 0; j < L.rank(); ++j) g[i][j] = static_cast<long long>(L.entry(i, j));
  return g;
}

/// Cofactor-expansion determinant.
inline long long cofactor_det(const Gram& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  long long s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Gram minor;
    for (std::size_t r = 1; r < n; ++r) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    s += (c % 2 ? -1 : 1) * m[0][c] * cofactor_det(minor);
  }
  return s;
}

/// Extreme rays of the pointed cone {y : a.y >= 0 for every row a}, by trying
/// the generalized cross product of every (n-1)-subset of rows.
inline std::vector<Vec> cone_rays_bruteforce(const std::vector<Vec>& rows, std::size_t n) {
  std::vector<Vec> out;
  std::vector<std::size_t> pick(n - 1);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n - 1) {
      Vec y(n);
      for (std::size_t c = 0; c < n; ++c) {
        Gram minor;
        for (std::size_t r : pick) {
          Vec row;
          for (std::size_t k = 0; k < n; ++k)
            if (k != c) row.push_back(rows[r][k]);
          minor.push_back(row);
        }
        y[c] = (c % 2 ? -1 : 1) * (n == 1 ? 1 : cofactor_det(minor));
      }
      long long g = content(y);
      if (g == 0) return;
      for (auto& c : y) c /= g;
      for (int sign : {1, -1}) {
        Vec z = y;
        for (auto& c : z) c *= sign;
        bool ok = true;
        for (const auto& a : rows) {
          long long s = 0;
          for (std::size_t k = 0; k < n; ++k) s += a[k] * z[k];
          if (s < 0) ok = false;
        }
        if (ok) out.push_back(z);
      }
      return;
    }
    for (std::size_t i = start; i < rows.size(); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace oracle

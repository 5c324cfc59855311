#pragma once

#include <conewalk/arithmetic.hpp>
#include <conewalk/matrix.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace conewalk {

/// Gram-Schmidt data of a positive definite Gram matrix: q(x) =
/// sum_i d[i] * (x_i + sum_{j>i} mu(i,j) x_j)^2.
struct GramSchmidt {
  std::vector<Rational> d;
  RatMatrix mu;
};

/// LDL^T factorization eliminating the leading coordinates first, so that
/// the last coordinate is isolated in the final term.
inline GramSchmidt upper_ldl(const IntMatrix& q) {
  const std::size_t n = q.rows();
  GramSchmidt gs{std::vector<Rational>(n), RatMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    Rational di = Rational(q(i, i));
    for (std::size_t l = 0; l < i; ++l) di -= gs.mu(l, i) * gs.mu(l, i) * gs.d[l];
    gs.d[i] = di;
    gs.mu(i, i) = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational s = Rational(q(i, j));
      for (std::size_t l = 0; l < i; ++l) s -= gs.mu(l, i) * gs.mu(l, j) * gs.d[l];
      gs.mu(i, j) = s / di;
    }
  }
  return gs;
}

namespace detail {

// Classical Gram-Schmidt on the basis ordered b_0..b_{n-1}: mu(i,j) for j<i.
inline void lll_gso(const IntMatrix& q, RatMatrix& mu, std::vector<Rational>& bn) {
  const std::size_t n = q.rows();
  mu = RatMatrix(n, n);
  bn.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational s = Rational(q(i, j));
      for (std::size_t l = 0; l < j; ++l) s -= mu(j, l) * mu(i, l) * bn[l];
      mu(i, j) = s / bn[j];
    }
    Rational s = Rational(q(i, i));
    for (std::size_t l = 0; l < i; ++l) s -= mu(i, l) * mu(i, l) * bn[l];
    bn[i] = s;
  }
}

inline Integer round_nearest(const Rational& x) { return floor(x + Rational(1, 2)); }

}  // namespace detail

/// LLL reduction (delta = 3/4) of a positive definite integral Gram matrix.
/// Returns a unimodular T whose columns are the reduced basis expressed in
/// the original basis; T^T q T is the reduced Gram matrix.
inline IntMatrix lll_reduce_gram(const IntMatrix& q_in) {
  const std::size_t n = q_in.rows();
  IntMatrix q = q_in;
  IntMatrix t = IntMatrix::identity(n);
  if (n < 2) return t;
  RatMatrix mu;
  std::vector<Rational> bn;
  detail::lll_gso(q, mu, bn);

  std::size_t k = 1;
  const Rational delta(3, 4);
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      Integer c = detail::round_nearest(mu(k, jj));
      if (c == 0) continue;
      for (std::size_t r = 0; r < n; ++r) t(r, k) -= c * t(r, jj);
      for (std::size_t l = 0; l < jj; ++l) mu(k, l) -= Rational(c) * mu(jj, l);
      mu(k, jj) -= Rational(c);
    }
    if (bn[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bn[k - 1]) {
      ++k;
    } else {
      for (std::size_t r = 0; r < n; ++r) std::swap(t(r, k), t(r, k - 1));
      q = t.transpose() * q_in * t;
      detail::lll_gso(q, mu, bn);
      k = k > 1 ? k - 1 : 1;
    }
  }
  return t;
}

}  // namespace conewalk

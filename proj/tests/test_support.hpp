#pragma once

#include <conewalk/lattice.hpp>
#include <conewalk/matrix.hpp>

#include <cmath>
#include <random>
#include <vector>

namespace testing_support {

using conewalk::IntMatrix;
using conewalk::LatticeSpace;
using conewalk::LatticeVector;

inline LatticeSpace k3_rank3() { return LatticeSpace{{0, 1, 1}, {1, -2, 0}, {1, 0, -2}}; }

inline LatticeVector random_vector(std::mt19937_64& rng, std::size_t n, long long bound) {
  std::uniform_int_distribution<long long> dist(-bound, bound);
  std::vector<conewalk::Integer> c;
  for (std::size_t i = 0; i < n; ++i) c.emplace_back(dist(rng));
  return LatticeVector(std::move(c));
}

/// Product of random elementary transvections and sign flips.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 8) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) {
      for (std::size_t r = 0; r < n; ++r) u(r, i) = -u(r, i);
      continue;
    }
    int c = coef(rng);
    for (std::size_t r = 0; r < n; ++r) u(r, i) += c * u(r, j);
  }
  return u;
}

/// Floating-point estimate of the spectral radius: ||A^N||^(1/N) for
/// N = 2^squarings. Squarings run in exact integers while the entries stay
/// below 2^200 (so unipotent parts are never perturbed by rounding) and
/// continue in doubles, with the scale kept in a logarithm, once they grow.
inline double spectral_radius_probe(const IntMatrix& a, int squarings = 30) {
  const std::size_t n = a.rows();
  auto max_abs = [&](const IntMatrix& m) {
    conewalk::Integer mx = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mx = std::max(mx, conewalk::abs(m(i, j)));
    return mx;
  };
  const double total = std::ldexp(1.0, squarings);
  IntMatrix exact = a;
  int k = 0;
  while (k < squarings && boost::multiprecision::msb(max_abs(exact)) < 200) {
    exact = exact * exact;
    ++k;
  }
  const conewalk::Integer mx = max_abs(exact);
  const unsigned shift = boost::multiprecision::msb(mx) > 60 ? boost::multiprecision::msb(mx) - 60 : 0;
  if (k == squarings)
    return std::exp((std::log(conewalk::to_double(conewalk::Integer(mx >> shift))) + shift * std::log(2.0)) / total);

  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const conewalk::Integer v = exact(i, j);
      const conewalk::Integer scaled = v < 0 ? conewalk::Integer(-(conewalk::Integer(-v) >> shift)) : conewalk::Integer(v >> shift);
      m[i * n + j] = conewalk::to_double(scaled);
    }
  double log_scale = shift * std::log(2.0);  // A^(2^k) = exp(log_scale) * m
  auto normalize = [&] {
    double top = 0;
    for (double v : m) top = std::max(top, std::abs(v));
    for (double& v : m) v /= top;
    log_scale += std::log(top);
  };
  normalize();
  for (; k < squarings; ++k) {
    std::vector<double> sq(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j) sq[i * n + j] += m[i * n + l] * m[l * n + j];
    m = std::move(sq);
    log_scale *= 2;
    normalize();
  }
  return std::exp(log_scale / total);
}

}  // namespace testing_support

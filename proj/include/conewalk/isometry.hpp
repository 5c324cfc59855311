#pragma once

#include <conewalk/arithmetic.hpp>
#include <conewalk/enumeration.hpp>
#include <conewalk/errors.hpp>
#include <conewalk/lattice.hpp>
#include <conewalk/matrix.hpp>
#include <conewalk/polynomial.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conewalk {

/// An integral matrix g with g^T G g = G, acting on column coordinates.
class LatticeIsometry {
 public:
  const LatticeSpace& space() const { return space_; }
  const IntMatrix& matrix() const { return matrix_; }
  std::size_t rank() const { return space_.rank(); }

  LatticeVector operator()(const LatticeVector& x) const {
    require_length(space_, x);
    return LatticeVector(matrix_ * x.coords());
  }

  friend bool operator==(const LatticeIsometry& a, const LatticeIsometry& b) {
    return a.space_ == b.space_ && a.matrix_ == b.matrix_;
  }

 private:
  LatticeIsometry(LatticeSpace L, IntMatrix m) : space_(std::move(L)), matrix_(std::move(m)) {}
  friend LatticeIsometry make_isometry(const LatticeSpace&, const IntMatrix&);
  friend LatticeIsometry unchecked_isometry(const LatticeSpace&, IntMatrix);

  LatticeSpace space_;
  IntMatrix matrix_;
};

/// Validates m^T G m = G exactly; the error names the first bad entry.
inline LatticeIsometry make_isometry(const LatticeSpace& L, const IntMatrix& m) {
  const std::size_t n = L.rank();
  if (m.rows() != n || m.cols() != n)
    throw InputError("isometry matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     ", lattice rank is " + std::to_string(n));
  const IntMatrix pulled = m.transpose() * L.gram() * m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (pulled(i, j) != L.entry(i, j))
        throw InputError("matrix does not preserve the form: entry (" + std::to_string(i) + "," +
                         std::to_string(j) + ") of g^T G g is " + pulled(i, j).str() + ", expected " +
                         L.entry(i, j).str());
  const Integer det = determinant(m);
  if (det != 1 && det != -1) throw Error("internal: form-preserving matrix with determinant " + det.str());
  return LatticeIsometry(L, m);
}

// For products of already validated isometries.
inline LatticeIsometry unchecked_isometry(const LatticeSpace& L, IntMatrix m) {
  return LatticeIsometry(L, std::move(m));
}

inline LatticeIsometry identity_isometry(const LatticeSpace& L) {
  return unchecked_isometry(L, IntMatrix::identity(L.rank()));
}

inline LatticeIsometry reflection_isometry(const LatticeSpace& L, const LatticeVector& r) {
  return unchecked_isometry(L, reflection_matrix(L, r));
}

/// g o h: apply h first, then g.
inline LatticeIsometry compose(const LatticeIsometry& g, const LatticeIsometry& h) {
  if (!(g.space() == h.space())) throw InputError("isometries act on different lattices");
  return unchecked_isometry(g.space(), g.matrix() * h.matrix());
}

inline LatticeIsometry power(const LatticeIsometry& g, std::uint64_t k) {
  IntMatrix r = IntMatrix::identity(g.rank());
  IntMatrix b = g.matrix();
  while (k) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return unchecked_isometry(g.space(), std::move(r));
}

inline LatticeIsometry power(const LatticeIsometry& g, const Integer& k) {
  IntMatrix r = IntMatrix::identity(g.rank());
  IntMatrix b = g.matrix();
  Integer e = k;
  while (e > 0) {
    if (e % 2 == 1) r = r * b;
    e /= 2;
    if (e > 0) b = b * b;
  }
  return unchecked_isometry(g.space(), std::move(r));
}

/// g^{-1} = G^{-1} g^T G.
inline LatticeIsometry inverse(const LatticeIsometry& g) {
  const std::size_t n = g.rank();
  const IntMatrix rhs = g.matrix().transpose() * g.space().gram();
  IntMatrix out(n, n);
  const RatMatrix gram = to_rational(g.space().gram());
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Rational> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = Rational(rhs(r, c));
    auto sol = solve_rational(gram, col);
    for (std::size_t r = 0; r < n; ++r) {
      if (denominator((*sol)[r]) != 1) throw Error("internal: non-integral inverse isometry");
      out(r, c) = numerator((*sol)[r]);
    }
  }
  return unchecked_isometry(g.space(), std::move(out));
}

/// True iff g keeps the positive-cone component of the marking: <gH,H> > 0.
inline bool preserves_positive_cone(const MarkedLattice& M, const LatticeIsometry& g) {
  if (!(g.space() == M.space())) throw InputError("isometry and marking live on different lattices");
  return M.degree(g(M.marking())) > 0;
}

/// lcm of all m with phi(m) <= rank: every finite-order integral isometry of
/// that rank has order dividing it.
inline Integer finite_order_bound(std::size_t rank) {
  Integer l = 1;
  for (std::uint64_t m = 1; m <= 2 * rank * rank + 2; ++m)
    if (euler_phi(m) <= rank) l = lcm(l, Integer(m));
  return l;
}

namespace detail {

inline bool is_identity(const IntMatrix& m) { return m == IntMatrix::identity(m.rows()); }

struct SpectralData {
  Polynomial charpoly;
  std::vector<PolynomialFactor> factors;
  std::optional<Polynomial> non_cyclotomic;
  Integer cyclotomic_lcm = 1;
};

inline SpectralData spectral_data(const LatticeIsometry& g) {
  SpectralData s;
  s.charpoly = characteristic_polynomial(g.matrix());
  s.factors = factor_monic(s.charpoly);
  for (const auto& f : s.factors) {
    auto m = cyclotomic_index(f.factor);
    if (!m) {
      if (!s.non_cyclotomic) s.non_cyclotomic = f.factor;
      continue;
    }
    s.cyclotomic_lcm = lcm(s.cyclotomic_lcm, Integer(*m));
  }
  return s;
}

inline std::vector<Integer> prime_divisors(Integer n) {
  std::vector<Integer> out;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Given g^N = I, the exact order: strip prime factors while the power
/// stays trivial.
inline Integer minimal_order(const LatticeIsometry& g, Integer n) {
  for (const auto& p : prime_divisors(n))
    while (n % p == 0 && is_identity(power(g, Integer(n / p)).matrix())) n /= p;
  return n;
}

inline std::optional<Integer> order_from(const LatticeIsometry& g, const SpectralData& s) {
  if (s.non_cyclotomic) return std::nullopt;
  if (!is_identity(power(g, s.cyclotomic_lcm).matrix())) return std::nullopt;
  return minimal_order(g, s.cyclotomic_lcm);
}

}  // namespace detail

/// The least N >= 1 with g^N = I, or nullopt for infinite order. A finite
/// order is the lcm of the orders of the eigenvalues, i.e. of the cyclotomic
/// indices of the characteristic polynomial's factors.
inline std::optional<Integer> order(const LatticeIsometry& g) {
  return detail::order_from(g, detail::spectral_data(g));
}

enum class IsometryType { kElliptic, kParabolic, kHyperbolic };

inline std::string to_string(IsometryType t) {
  switch (t) {
    case IsometryType::kElliptic:
      return "elliptic";
    case IsometryType::kParabolic:
      return "parabolic";
    case IsometryType::kHyperbolic:
      return "hyperbolic";
  }
  return "?";
}

struct IsometryKind {
  IsometryType type;
  std::optional<Integer> order;             // elliptic
  std::optional<LatticeVector> fixed_ray;   // parabolic
  std::optional<Polynomial> certificate;    // hyperbolic: non-cyclotomic irreducible factor
  Polynomial charpoly;
  std::vector<PolynomialFactor> factors;
};

namespace detail {

/// Radical of the form restricted to ker(g - I); for a parabolic g it is the
/// fixed isotropic line.
inline LatticeVector fixed_isotropic_ray(const MarkedLattice& M, const LatticeIsometry& g) {
  const std::size_t n = g.rank();
  IntMatrix a = g.matrix();
  for (std::size_t i = 0; i < n; ++i) a(i, i) -= 1;
  std::vector<LatticeVector> fixed;
  for (auto& k : integer_kernel(a)) fixed.emplace_back(std::move(k));
  const IntMatrix restricted = induced_gram(M.space(), fixed);
  const auto radical = integer_kernel(restricted);
  if (radical.size() != 1)
    throw Error("internal: fixed space of a parabolic isometry has radical of rank " +
                std::to_string(radical.size()));
  LatticeVector v = LatticeVector::zero(n);
  for (std::size_t i = 0; i < fixed.size(); ++i) v += radical[0][i] * fixed[i];
  v = v.primitive();
  if (M.degree(v) < 0) v = -v;
  return v;
}

}  // namespace detail

/// Elliptic / parabolic / hyperbolic trichotomy. Hyperbolic iff some
/// irreducible factor of the characteristic polynomial is not cyclotomic
/// (Kronecker); otherwise elliptic iff g has finite order.
inline IsometryKind classify(const MarkedLattice& M, const LatticeIsometry& g) {
  if (!preserves_positive_cone(M, g))
    throw PreconditionError("isometry swaps the two components of the positive cone");
  detail::SpectralData s = detail::spectral_data(g);
  IsometryKind k{IsometryType::kElliptic, std::nullopt, std::nullopt, std::nullopt, s.charpoly, s.factors};
  if (s.non_cyclotomic) {
    k.type = IsometryType::kHyperbolic;
    k.certificate = s.non_cyclotomic;
    return k;
  }
  if (auto ord = detail::order_from(g, s)) {
    k.order = ord;
    return k;
  }
  k.type = IsometryType::kParabolic;
  k.fixed_ray = detail::fixed_isotropic_ray(M, g);
  return k;
}

/// The unique primitive isotropic fixed vector of a parabolic g, oriented so
/// that it pairs positively with the marking.
inline LatticeVector parabolic_fixed_ray(const MarkedLattice& M, const LatticeIsometry& g) {
  IsometryKind k = classify(M, g);
  if (k.type != IsometryType::kParabolic)
    throw PreconditionError("isometry is " + to_string(k.type) + ", not parabolic");
  return *k.fixed_ray;
}

}  // namespace conewalk

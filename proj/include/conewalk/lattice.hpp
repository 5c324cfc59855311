#pragma once

#include <conewalk/arithmetic.hpp>
#include <conewalk/errors.hpp>
#include <conewalk/matrix.hpp>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace conewalk {

/// Coordinates of a lattice element in the basis of its ambient lattice.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<long long> coords) {
    coords_.reserve(coords.size());
    for (long long c : coords) coords_.emplace_back(c);
  }

  static LatticeVector zero(std::size_t n) { return LatticeVector(std::vector<Integer>(n)); }
  static LatticeVector basis(std::size_t n, std::size_t i) {
    LatticeVector v = zero(n);
    v.coords_[i] = 1;
    return v;
  }

  std::size_t size() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Integer>& coords() const { return coords_; }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }

  /// gcd of the coordinates (0 for the zero vector).
  Integer content() const {
    Integer g = 0;
    for (const auto& c : coords_) g = gcd(g, c);
    return g;
  }

  bool is_primitive() const { return content() == 1; }

  LatticeVector primitive() const {
    Integer g = content();
    if (g == 0) throw PreconditionError("zero vector has no primitive representative");
    LatticeVector r = *this;
    for (auto& c : r.coords_) c /= g;
    return r;
  }

  LatticeVector& operator+=(const LatticeVector& o) {
    check_size(o);
    for (std::size_t i = 0; i < size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) {
    check_size(o);
    for (std::size_t i = 0; i < size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  LatticeVector& operator*=(const Integer& k) {
    for (auto& c : coords_) c *= k;
    return *this;
  }

  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Integer& k, LatticeVector a) { return a *= k; }
  friend LatticeVector operator-(LatticeVector a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a.coords_[i] < b.coords_[i]) return std::strong_ordering::less;
      if (a.coords_[i] > b.coords_[i]) return std::strong_ordering::greater;
    }
    return a.size() <=> b.size();
  }

 private:
  void check_size(const LatticeVector& o) const {
    if (o.size() != size()) throw InputError("vector length mismatch");
  }

  std::vector<Integer> coords_;
};

inline std::string to_string(const LatticeVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
  return os << to_string(v);
}

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

inline std::string to_string(const Signature& s) {
  return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + ")";
}

/// A free Z-module of finite rank with a nondegenerate symmetric integral
/// bilinear form, given by its Gram matrix. Immutable after construction.
class LatticeSpace {
 public:
  explicit LatticeSpace(IntMatrix gram, std::vector<std::string> labels = {})
      : gram_(std::move(gram)), labels_(std::move(labels)) {
    if (!gram_.square()) throw InputError("Gram matrix must be square");
    if (gram_.rows() == 0) throw InputError("Gram matrix must have positive rank");
    if (!gram_.is_symmetric()) throw InputError("Gram matrix must be symmetric");
    if (!labels_.empty() && labels_.size() != gram_.rows())
      throw InputError("label count must equal the rank");
    determinant_ = conewalk::determinant(gram_);
    if (determinant_ == 0) throw InputError("Gram matrix is degenerate (determinant 0)");
  }

  LatticeSpace(std::initializer_list<std::initializer_list<long long>> rows)
      : LatticeSpace(IntMatrix(rows)) {}

  static LatticeSpace diagonal(const std::vector<long long>& entries) {
    IntMatrix g(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
    return LatticeSpace(std::move(g));
  }

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const Integer& entry(std::size_t i, std::size_t j) const { return gram_(i, j); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Integer& cached_determinant() const { return determinant_; }

  friend bool operator==(const LatticeSpace& a, const LatticeSpace& b) {
    return a.gram_ == b.gram_ && a.labels_ == b.labels_;
  }

 private:
  IntMatrix gram_;
  std::vector<std::string> labels_;
  Integer determinant_;
};

inline void require_length(const LatticeSpace& L, const LatticeVector& x) {
  if (x.size() != L.rank())
    throw InputError("vector " + to_string(x) + " has length " + std::to_string(x.size()) +
                     ", lattice rank is " + std::to_string(L.rank()));
}

/// The vector G*x, i.e. the linear functional <x, .> in coordinates.
inline std::vector<Integer> pairing_row(const LatticeSpace& L, const LatticeVector& x) {
  require_length(L, x);
  return L.gram() * x.coords();
}

inline Integer inner_product(const LatticeSpace& L, const LatticeVector& x,
                             const LatticeVector& y) {
  require_length(L, x);
  require_length(L, y);
  Integer s = 0;
  const std::size_t n = L.rank();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < n; ++j) row += L.entry(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

inline Integer norm(const LatticeSpace& L, const LatticeVector& x) {
  return inner_product(L, x, x);
}

inline Integer determinant(const LatticeSpace& L) { return L.cached_determinant(); }

/// Sylvester signature by symmetric congruence reduction over Q.
inline Signature signature(const LatticeSpace& L) {
  const std::size_t n = L.rank();
  RatMatrix a = to_rational(L.gram());
  Signature sig;
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) == 0) {
      std::size_t j = i + 1;
      while (j < n && a(i, j) == 0) ++j;
      if (j == n) continue;  // unreachable for nondegenerate forms
      if (a(j, j) != 0) {
        // symmetric swap of e_i and e_j
        a.swap_rows(i, j);
        for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
      } else {
        // e_i <- e_i + e_j gives a(i,i) = 2 a(i,j) != 0
        for (std::size_t k = 0; k < n; ++k) a(i, k) += a(j, k);
        for (std::size_t k = 0; k < n; ++k) a(k, i) += a(k, j);
      }
    }
    const Rational pivot = a(i, i);
    for (std::size_t k = i + 1; k < n; ++k) {
      if (a(k, i) == 0) continue;
      const Rational f = a(k, i) / pivot;
      for (std::size_t c = i; c < n; ++c) a(k, c) -= f * a(i, c);
      for (std::size_t r = i; r < n; ++r) a(r, k) = a(k, r);
    }
    (pivot > 0 ? sig.positive : sig.negative) += 1;
  }
  return sig;
}

/// True iff x^2 is even for every x, i.e. every diagonal entry is even.
inline bool is_even(const LatticeSpace& L) {
  for (std::size_t i = 0; i < L.rank(); ++i)
    if (L.entry(i, i) % 2 != 0) return false;
  return true;
}

inline void require_root(const LatticeSpace& L, const LatticeVector& r) {
  Integer n = norm(L, r);
  if (n != -2)
    throw PreconditionError("reflection vector " + to_string(r) + " has norm " + n.str() +
                            ", expected -2");
}

/// s_r(x) = x + <x,r> r for a root r (r^2 = -2).
inline LatticeVector reflect_in_root(const LatticeSpace& L, const LatticeVector& r,
                                     const LatticeVector& x) {
  require_root(L, r);
  require_length(L, x);
  return x + inner_product(L, x, r) * r;
}

/// Matrix of s_r acting on column coordinate vectors.
inline IntMatrix reflection_matrix(const LatticeSpace& L, const LatticeVector& r) {
  require_root(L, r);
  const std::size_t n = L.rank();
  std::vector<Integer> gr = pairing_row(L, r);
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) += r[i] * gr[j];
  return m;
}

/// Saturated sublattice {x : <x,v> = 0} with its induced Gram matrix. The
/// induced form is degenerate exactly when v is isotropic (then v lies in
/// the complement), so it is returned as a plain matrix.
struct OrthogonalComplement {
  std::vector<LatticeVector> basis;
  IntMatrix gram;

  bool degenerate() const { return conewalk::determinant(gram) == 0; }

  LatticeSpace space() const {
    if (gram.rows() == 0) throw PreconditionError("orthogonal complement has rank 0");
    if (degenerate())
      throw PreconditionError("orthogonal complement of an isotropic vector is degenerate");
    return LatticeSpace(gram);
  }

  /// Ambient coordinates of the complement element with basis coefficients c.
  LatticeVector embed(const LatticeVector& c) const {
    LatticeVector out = LatticeVector::zero(basis.empty() ? 0 : basis.front().size());
    for (std::size_t i = 0; i < basis.size(); ++i) out += c[i] * basis[i];
    return out;
  }
};

inline IntMatrix induced_gram(const LatticeSpace& L, const std::vector<LatticeVector>& basis) {
  IntMatrix g(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j)
      g(i, j) = g(j, i) = inner_product(L, basis[i], basis[j]);
  return g;
}

inline OrthogonalComplement orthogonal_complement(const LatticeSpace& L, const LatticeVector& v) {
  require_length(L, v);
  if (v.is_zero()) throw PreconditionError("orthogonal complement of the zero vector");
  IntMatrix row(1, L.rank());
  std::vector<Integer> gv = pairing_row(L, v);
  for (std::size_t j = 0; j < L.rank(); ++j) row(0, j) = gv[j];
  OrthogonalComplement oc;
  for (auto& k : integer_kernel(row)) oc.basis.emplace_back(std::move(k));
  oc.gram = induced_gram(L, oc.basis);
  return oc;
}

}  // namespace conewalk

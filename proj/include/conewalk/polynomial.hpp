#pragma once

#include <conewalk/arithmetic.hpp>
#include <conewalk/errors.hpp>
#include <conewalk/matrix.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace conewalk {

/// Dense univariate polynomial with integer coefficients, lowest degree first.
/// The zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<long long> coeffs) {
    for (long long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static Polynomial x() { return Polynomial{0, 1}; }
  static Polynomial constant(const Integer& v) { return Polynomial(std::vector<Integer>{v}); }
  /// x^n - 1
  static Polynomial x_pow_minus_one(std::size_t n) {
    std::vector<Integer> c(n + 1);
    c[0] = -1;
    c[n] = 1;
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return c_; }
  Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
  Integer leading() const { return c_.empty() ? Integer(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Integer operator()(const Integer& v) const {
    Integer s = 0;
    for (std::size_t i = c_.size(); i-- > 0;) s = s * v + c_[i];
    return s;
  }

  Polynomial derivative() const {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Integer(i));
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Integer& k, const Polynomial& a) {
    std::vector<Integer> r = a.c_;
    for (auto& v : r) v *= k;
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Integer> c_;
};

/// Human-readable form such as "x^3 - 35x^2 + 35x - 1".
inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int i = p.degree(); i >= 0; --i) {
    Integer c = p.coeff(static_cast<std::size_t>(i));
    if (c == 0) continue;
    const bool neg = c < 0;
    Integer a = neg ? Integer(-c) : c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (a != 1 || i == 0) s += a.str();
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

/// Quotient and remainder on division by a monic polynomial; exact over Z.
inline std::pair<Polynomial, Polynomial> divmod_monic(const Polynomial& a, const Polynomial& m) {
  if (!m.is_monic()) throw PreconditionError("divisor must be monic");
  std::vector<Integer> r = a.coeffs();
  const int dm = m.degree();
  if (a.degree() < dm) return {Polynomial(), a};
  std::vector<Integer> q(static_cast<std::size_t>(a.degree() - dm + 1));
  for (int i = a.degree(); i >= dm; --i) {
    const Integer f = r[static_cast<std::size_t>(i)];
    if (f == 0) continue;
    q[static_cast<std::size_t>(i - dm)] = f;
    for (int j = 0; j <= dm; ++j)
      r[static_cast<std::size_t>(i - dm + j)] -= f * m.coeff(static_cast<std::size_t>(j));
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

/// det(xI - A) by fraction-free elimination over Z[x]. The k-th pivot is the
/// characteristic polynomial of the leading k x k block, hence monic and
/// never zero, so no pivoting is needed.
inline Polynomial characteristic_polynomial(const IntMatrix& a) {
  if (!a.square()) throw InputError("characteristic polynomial needs a square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Polynomial{1};
  std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = (i == j) ? Polynomial(std::vector<Integer>{-a(i, j), Integer(1)})
                         : Polynomial::constant(-a(i, j));
  Polynomial prev{1};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto [q, r] = divmod_monic(num, prev);
        m[i][j] = std::move(q);
      }
    }
    prev = m[k][k];
  }
  return m[n - 1][n - 1];
}

inline std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t r = m;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    r -= r / p;
  }
  if (m > 1) r -= r / m;
  return r;
}

/// The m-th cyclotomic polynomial, by dividing x^m - 1 by the lower ones.
inline Polynomial cyclotomic(std::size_t m) {
  if (m == 0) throw InputError("cyclotomic index must be positive");
  Polynomial p = Polynomial::x_pow_minus_one(m);
  for (std::size_t d = 1; d < m; ++d)
    if (m % d == 0) p = divmod_monic(p, cyclotomic(d)).first;
  return p;
}

/// m with p = Phi_m, if any. Since phi(m) >= sqrt(m/2), only m <= 2 deg^2
/// can have degree deg.
inline std::optional<std::size_t> cyclotomic_index(const Polynomial& p) {
  if (!p.is_monic() || p.degree() < 1) return std::nullopt;
  const std::uint64_t d = static_cast<std::uint64_t>(p.degree());
  for (std::uint64_t m = 1; m <= 2 * d * d + 2; ++m)
    if (euler_phi(m) == d && cyclotomic(static_cast<std::size_t>(m)) == p)
      return static_cast<std::size_t>(m);
  return std::nullopt;
}

struct PolynomialFactor {
  Polynomial factor;
  int multiplicity = 1;
};

namespace detail {

// ---- dense polynomials over F_p (p an odd prime below 2^31) ----
using ModPoly = std::vector<long long>;

inline void mp_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long long mp_inv(long long a, long long p) {
  long long r = 1, b = a % p, e = p - 2;
  if (b < 0) b += p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline ModPoly mp_reduce(const Polynomial& f, long long p) {
  ModPoly r;
  for (const auto& c : f.coeffs()) {
    Integer m = c % p;
    if (m < 0) m += p;
    r.push_back(static_cast<long long>(m));
  }
  mp_trim(r);
  return r;
}

inline ModPoly mp_sub(const ModPoly& a, const ModPoly& b, long long p) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    long long v = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
    r[i] = ((v % p) + p) % p;
  }
  mp_trim(r);
  return r;
}

inline ModPoly mp_mul(const ModPoly& a, const ModPoly& b, long long p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  mp_trim(r);
  return r;
}

inline std::pair<ModPoly, ModPoly> mp_divmod(ModPoly a, const ModPoly& b, long long p) {
  const long long inv = mp_inv(b.back(), p);
  if (a.size() < b.size()) return {{}, a};
  const std::size_t db = b.size() - 1;
  ModPoly q(a.size() - db, 0);
  for (std::size_t s = q.size(); s-- > 0;) {
    long long f = a[s + db] * inv % p;
    q[s] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[s + j] = ((a[s + j] - f * b[j]) % p + p) % p;
  }
  mp_trim(a);
  mp_trim(q);
  return {q, a};
}

inline ModPoly mp_monic(ModPoly a, long long p) {
  if (a.empty()) return a;
  const long long inv = mp_inv(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

inline ModPoly mp_gcd(ModPoly a, ModPoly b, long long p) {
  while (!b.empty()) {
    ModPoly r = mp_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(a, p);
}

inline ModPoly mp_powmod(ModPoly base, const Integer& e, const ModPoly& m, long long p) {
  ModPoly r{1};
  base = mp_divmod(base, m, p).second;
  Integer k = e;
  while (k > 0) {
    if (k % 2 == 1) r = mp_divmod(mp_mul(r, base, p), m, p).second;
    base = mp_divmod(mp_mul(base, base, p), m, p).second;
    k /= 2;
  }
  return r;
}

inline ModPoly mp_derivative(const ModPoly& a, long long p) {
  ModPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long long>(i % p) % p);
  mp_trim(r);
  return r;
}

/// Monic irreducible factors of a squarefree monic f over F_p
/// (distinct-degree then equal-degree splitting).
inline std::vector<ModPoly> mp_factor_squarefree(ModPoly f, long long p, std::mt19937_64& rng) {
  std::vector<ModPoly> out;
  std::vector<std::pair<ModPoly, int>> by_degree;
  const ModPoly x{0, 1};
  ModPoly h = x;
  for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
    h = mp_powmod(h, Integer(p), f, p);
    ModPoly g = mp_gcd(f, mp_sub(h, x, p), p);
    if (g.size() > 1) {
      by_degree.emplace_back(g, d);
      f = mp_divmod(f, g, p).first;
      h = mp_divmod(h, f, p).second;
    }
  }
  if (f.size() > 1) by_degree.emplace_back(f, static_cast<int>(f.size()) - 1);

  std::uniform_int_distribution<long long> coef(0, p - 1);
  std::function<void(const ModPoly&, int)> split = [&](const ModPoly& g, int d) {
    const int n = static_cast<int>(g.size()) - 1;
    if (n == d) {
      out.push_back(g);
      return;
    }
    Integer pd = 1;
    for (int i = 0; i < d; ++i) pd *= p;
    const Integer e = (pd - 1) / 2;
    while (true) {
      ModPoly a(static_cast<std::size_t>(n));
      for (auto& c : a) c = coef(rng);
      mp_trim(a);
      if (a.size() < 2) continue;
      ModPoly b = mp_sub(mp_powmod(a, e, g, p), ModPoly{1}, p);
      ModPoly k = mp_gcd(g, b, p);
      const int dk = static_cast<int>(k.size()) - 1;
      if (dk > 0 && dk < n) {
        split(k, d);
        split(mp_divmod(g, k, p).first, d);
        return;
      }
    }
  };
  for (const auto& [g, d] : by_degree) split(g, d);
  return out;
}

/// Extended Euclid over F_p: s, t with s a + t b = 1 for coprime a, b.
inline std::pair<ModPoly, ModPoly> mp_bezout(const ModPoly& a, const ModPoly& b, long long p) {
  ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = mp_divmod(r0, r1, p);
    ModPoly s2 = mp_sub(s0, mp_mul(q, s1, p), p);
    ModPoly t2 = mp_sub(t0, mp_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is a nonzero constant
  const long long inv = mp_inv(r0[0], p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  return {s0, t0};
}

inline Integer sym_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

inline Polynomial reduce_sym(const Polynomial& f, const Integer& m) {
  std::vector<Integer> c = f.coeffs();
  for (auto& v : c) v = sym_mod(v, m);
  return Polynomial(std::move(c));
}

inline Polynomial from_modp(const ModPoly& a) {
  std::vector<Integer> c;
  for (long long v : a) c.emplace_back(v);
  return Polynomial(std::move(c));
}

/// Lifts f = g h (mod p), g and h monic and coprime mod p, to mod p^k.
inline std::pair<Polynomial, Polynomial> hensel_two(const Polynomial& f, Polynomial g, Polynomial h,
                                                    long long p, int k) {
  const ModPoly gp = mp_reduce(g, p), hp = mp_reduce(h, p);
  const auto [s, t] = mp_bezout(gp, hp, p);
  Integer pj = p;
  for (int j = 1; j < k; ++j) {
    Polynomial diff = f - g * h;
    std::vector<Integer> ec = diff.coeffs();
    for (auto& v : ec) v /= pj;
    const ModPoly e = mp_reduce(Polynomial(ec), p);
    const ModPoly g_now = mp_reduce(g, p);
    auto [q, a] = mp_divmod(mp_mul(e, t, p), g_now, p);
    // e = (e s + q h) g + a h with deg a < deg g
    const ModPoly b = mp_sub(mp_mul(e, s, p), mp_sub(ModPoly{}, mp_mul(q, hp, p), p), p);
    g = g + pj * from_modp(a);
    h = h + pj * from_modp(b);
    pj *= p;
  }
  return {reduce_sym(g, pj), reduce_sym(h, pj)};
}

using RatPoly = std::vector<Rational>;

inline void rp_trim(RatPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline RatPoly rp_from(const Polynomial& f) {
  RatPoly r;
  for (const auto& c : f.coeffs()) r.emplace_back(c);
  return r;
}

inline std::pair<RatPoly, RatPoly> rp_divmod(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) return {{}, a};
  const std::size_t db = b.size() - 1;
  RatPoly q(a.size() - db);
  for (std::size_t s = q.size(); s-- > 0;) {
    Rational f = a[s + db] / b.back();
    q[s] = f;
    for (std::size_t j = 0; j <= db; ++j) a[s + j] -= f * b[j];
  }
  rp_trim(a);
  rp_trim(q);
  return {q, a};
}

inline RatPoly rp_monic(RatPoly a) {
  if (a.empty()) return a;
  Rational lc = a.back();
  for (auto& c : a) c /= lc;
  return a;
}

inline RatPoly rp_gcd(RatPoly a, RatPoly b) {
  while (!b.empty()) {
    RatPoly r = rp_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return rp_monic(a);
}

inline RatPoly rp_sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = (i < a.size() ? a[i] : Rational(0)) - (i < b.size() ? b[i] : Rational(0));
  rp_trim(r);
  return r;
}

inline RatPoly rp_derivative(const RatPoly& a) {
  RatPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Rational(static_cast<long long>(i)));
  rp_trim(r);
  return r;
}

inline Polynomial rp_to_int(const RatPoly& a) {
  std::vector<Integer> c;
  for (const auto& v : a) {
    if (denominator(v) != 1) throw Error("internal: non-integral factor of a monic polynomial");
    c.push_back(numerator(v));
  }
  return Polynomial(std::move(c));
}

/// Squarefree decomposition over Q of a monic f: f = prod a_i^i (Yun).
inline std::vector<std::pair<Polynomial, int>> squarefree_parts(const Polynomial& f) {
  std::vector<std::pair<Polynomial, int>> out;
  RatPoly fr = rp_from(f);
  RatPoly a0 = rp_gcd(fr, rp_derivative(fr));
  RatPoly b = rp_divmod(fr, a0).first;
  RatPoly c = rp_divmod(rp_derivative(fr), a0).first;
  RatPoly d = rp_sub(c, rp_derivative(b));
  for (int i = 1; b.size() > 1; ++i) {
    RatPoly a = rp_gcd(b, d);
    if (a.size() > 1) out.emplace_back(rp_to_int(a), i);
    b = rp_divmod(b, a).first;
    c = rp_divmod(d, a).first;
    d = rp_sub(c, rp_derivative(b));
  }
  return out;
}

/// Irreducible factors of a monic squarefree f over Z (Zassenhaus).
inline std::vector<Polynomial> factor_squarefree_monic(const Polynomial& f) {
  if (f.degree() <= 1) return {f};
  // Prime with f squarefree mod p.
  long long p = 3;
  auto is_prime = [](long long q) {
    for (long long d = 2; d * d <= q; ++d)
      if (q % d == 0) return false;
    return true;
  };
  for (;; p += 2) {
    if (!is_prime(p)) continue;
    ModPoly fp = mp_reduce(f, p);
    if (mp_gcd(fp, mp_derivative(fp, p), p).size() == 1) break;
  }
  std::mt19937_64 rng(0x5eed + static_cast<std::uint64_t>(p));
  std::vector<ModPoly> modular = mp_factor_squarefree(mp_reduce(f, p), p, rng);
  if (modular.size() == 1) return {f};

  // Coefficient bound for any factor: 2^deg * ||f||_2.
  Integer norm_sq = 0;
  for (const auto& c : f.coeffs()) norm_sq += c * c;
  Integer bound = (isqrt(norm_sq) + 1);
  for (int i = 0; i < f.degree(); ++i) bound *= 2;
  int k = 1;
  Integer pk = p;
  while (pk <= 2 * bound) {
    pk *= p;
    ++k;
  }

  std::sort(modular.begin(), modular.end());
  std::vector<Polynomial> lifted;
  Polynomial rest = f;
  for (std::size_t i = 0; i + 1 < modular.size(); ++i) {
    ModPoly cof{1};
    for (std::size_t j = i + 1; j < modular.size(); ++j) cof = mp_mul(cof, modular[j], p);
    auto [g, h] = hensel_two(rest, from_modp(modular[i]), from_modp(cof), p, k);
    lifted.push_back(g);
    rest = h;
  }
  lifted.push_back(rest);

  // Recombine: smallest subsets first.
  std::vector<Polynomial> out;
  Polynomial cur = f;
  std::size_t size = 1;
  while (2 * size <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      Polynomial prod{1};
      for (std::size_t i : idx) prod = reduce_sym(prod * lifted[i], pk);
      auto [q, r] = divmod_monic(cur, prod);
      if (r.is_zero()) {
        out.push_back(prod);
        cur = q;
        std::vector<Polynomial> remaining;
        for (std::size_t i = 0; i < lifted.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) remaining.push_back(lifted[i]);
        lifted = std::move(remaining);
        found = true;
        break;
      }
      // next combination
      std::size_t pos = size;
      while (pos-- > 0) {
        if (idx[pos] < lifted.size() - size + pos) break;
        if (pos == 0) {
          pos = size;
          break;
        }
      }
      if (pos == size) break;
      ++idx[pos];
      for (std::size_t j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++size;
  }
  if (cur.degree() > 0) out.push_back(cur);
  return out;
}

}  // namespace detail

inline bool polynomial_less(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const auto ai = a.coeff(static_cast<std::size_t>(i)), bi = b.coeff(static_cast<std::size_t>(i));
    if (ai != bi) return ai < bi;
  }
  return false;
}

/// Complete factorization of a monic integer polynomial into monic
/// irreducible factors with multiplicities, sorted by degree then by
/// coefficients from the top.
inline std::vector<PolynomialFactor> factor_monic(const Polynomial& f) {
  if (!f.is_monic()) throw PreconditionError("factor_monic needs a monic polynomial, got " + to_string(f));
  std::vector<PolynomialFactor> out;
  if (f.degree() == 0) return out;
  for (const auto& [part, mult] : detail::squarefree_parts(f))
    for (auto& g : detail::factor_squarefree_monic(part)) out.push_back({g, mult});
  std::sort(out.begin(), out.end(), [](const PolynomialFactor& a, const PolynomialFactor& b) {
    if (a.factor == b.factor) return a.multiplicity < b.multiplicity;
    return polynomial_less(a.factor, b.factor);
  });
  return out;
}

}  // namespace conewalk

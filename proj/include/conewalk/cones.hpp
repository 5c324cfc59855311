#pragma once

#include <conewalk/arithmetic.hpp>
#include <conewalk/enumeration.hpp>
#include <conewalk/errors.hpp>
#include <conewalk/lattice.hpp>
#include <conewalk/matrix.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace conewalk {

// ---------------------------------------------------------------------------
// Positive cone and nef tests

/// Membership in the positive-cone component selected by the marking:
/// x^2 >= 0 and <x,H> >= 0, or both strict when `strict` is set.
inline bool in_positive_cone(const MarkedLattice& M, const LatticeVector& x, bool strict) {
  const Integer n = norm(M.space(), x);
  const Integer d = M.degree(x);
  if (strict) return n > 0 && d > 0;
  if (x.is_zero()) return true;
  return n >= 0 && d >= 0;
}

struct NefCheck {
  bool nef = true;
  std::optional<LatticeVector> violator;
  explicit operator bool() const { return nef; }
};

/// <x,C> >= 0 for every supplied class C; reports the first violator.
inline NefCheck is_nef_against(const LatticeVector& x, const std::vector<LatticeVector>& curves,
                               const LatticeSpace& L) {
  for (const auto& c : curves)
    if (inner_product(L, x, c) < 0) return {false, c};
  return {};
}

// ---------------------------------------------------------------------------
// Chamber walk

enum class WalkPolicy {
  /// Reflect in the root pairing most negatively with the current image;
  /// ties go to the lexicographically smallest root.
  kMostNegative,
  /// Reflect in the first root (in supplied order) with negative pairing.
  kFirstInOrder,
};

struct ChamberWalkResult {
  LatticeVector image;
  std::vector<LatticeVector> word;  // in application order
  std::size_t length() const { return word.size(); }
};

/// Moves x into the chamber {y : <y,r> >= 0 for all supplied roots} that
/// contains the marking, by successive reflections. <image,H> strictly
/// decreases at each step and stays positive, which bounds the walk.
inline ChamberWalkResult chamber_walk(const MarkedLattice& M, const std::vector<LatticeVector>& roots,
                                      const LatticeVector& x,
                                      WalkPolicy policy = WalkPolicy::kMostNegative) {
  const LatticeSpace& L = M.space();
  require_length(L, x);
  if (!in_positive_cone(M, x, true))
    throw PreconditionError("chamber walk input " + to_string(x) + " is not in the open positive cone");
  std::vector<std::vector<Integer>> rows;
  rows.reserve(roots.size());
  for (const auto& r : roots) {
    require_root(L, r);
    if (M.degree(r) <= 0)
      throw PreconditionError("root " + to_string(r) +
                              " has nonpositive degree; the marking is on or beyond its mirror");
    rows.push_back(pairing_row(L, r));
  }
  auto pairing = [&](std::size_t i, const LatticeVector& y) {
    Integer s = 0;
    for (std::size_t j = 0; j < y.size(); ++j) s += rows[i][j] * y[j];
    return s;
  };

  ChamberWalkResult result{x, {}};
  while (true) {
    std::optional<std::size_t> pick;
    Integer best = 0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      Integer p = pairing(i, result.image);
      if (p >= 0) continue;
      if (policy == WalkPolicy::kFirstInOrder) {
        pick = i;
        best = p;
        break;
      }
      if (!pick || p < best || (p == best && roots[i] < roots[*pick])) {
        pick = i;
        best = p;
      }
    }
    if (!pick) return result;
    result.image += best * roots[*pick];
    result.word.push_back(roots[*pick]);
  }
}

/// Every root separating x from the marking (<r,H> > 0 > <r,x>) has degree at
/// most this bound, so a walk over all roots up to it lands in the true chamber
/// of H. Derived from Cauchy-Schwarz on the negative definite complement of
/// the point where the segment [H,x] meets the mirror.
inline Integer separating_root_degree_bound(const MarkedLattice& M, const LatticeVector& x) {
  if (!in_positive_cone(M, x, true))
    throw PreconditionError("degree bound needs x in the open positive cone");
  const Integer hx = M.degree(x);
  const Integer xx = norm(M.space(), x);
  // <r,H>^2 <= 2 (<H,x>^2 / x^2 - H^2)
  const Rational bound_sq = Rational(2) * (Rational(hx * hx, xx) - Rational(M.marking_norm()));
  if (bound_sq <= 0) return 0;
  return isqrt(floor(bound_sq));
}

// ---------------------------------------------------------------------------
// Rational polyhedral cones

/// A cone generated by finitely many primitive integral rays in a lattice.
/// Generators are deduplicated up to positive scaling; `lineality` lists a
/// basis of the largest linear subspace contained in the cone when it is
/// known (both signs of each basis vector then also appear as generators).
class RationalCone {
 public:
  RationalCone(LatticeSpace ambient, std::vector<LatticeVector> generators,
               std::vector<LatticeVector> lineality = {})
      : ambient_(std::move(ambient)), lineality_(std::move(lineality)) {
    for (auto& g : generators) {
      require_length(ambient_, g);
      if (g.is_zero()) throw InputError("cone generator is zero");
      LatticeVector p = g.primitive();
      if (std::find(generators_.begin(), generators_.end(), p) == generators_.end())
        generators_.push_back(std::move(p));
    }
  }

  const LatticeSpace& ambient() const { return ambient_; }
  const std::vector<LatticeVector>& generators() const { return generators_; }
  const std::vector<LatticeVector>& lineality() const { return lineality_; }
  std::size_t dimension() const { return ambient_.rank(); }

 private:
  LatticeSpace ambient_;
  std::vector<LatticeVector> generators_;
  std::vector<LatticeVector> lineality_;
};

namespace detail {

struct InequalityCone {
  std::vector<LatticeVector> rays;       // pointed part, primitive, sorted
  std::vector<LatticeVector> lineality;  // integral basis
};

inline Integer dot(const std::vector<Integer>& a, const LatticeVector& x) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

/// Double description: generators of {y in Q^n : a.y >= 0 for every row a}.
/// The lineality space is split off as ker(A); the pointed part is computed
/// inside its Euclidean complement.
inline InequalityCone cone_from_inequalities(std::size_t n, const std::vector<std::vector<Integer>>& rows_in) {
  InequalityCone out;
  IntMatrix a(rows_in.size(), n);
  for (std::size_t i = 0; i < rows_in.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rows_in[i][j];
  for (auto& k : integer_kernel(a)) out.lineality.emplace_back(std::move(k));

  std::vector<std::vector<Integer>> rows = rows_in;
  for (const auto& l : out.lineality) {
    rows.push_back(l.coords());
    std::vector<Integer> neg = l.coords();
    for (auto& c : neg) c = -c;
    rows.push_back(std::move(neg));
  }

  // Initial simplicial cone on n independent rows.
  std::vector<std::size_t> basis_rows;
  std::vector<std::vector<Integer>> chosen;
  for (std::size_t i = 0; i < rows.size() && basis_rows.size() < n; ++i) {
    chosen.push_back(rows[i]);
    if (rank_of_vectors(chosen, n) == chosen.size())
      basis_rows.push_back(i);
    else
      chosen.pop_back();
  }
  if (basis_rows.size() != n) return out;  // only possible when n == 0

  RatMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = Rational(chosen[i][j]);

  struct Ray {
    LatticeVector v;
    std::vector<bool> zero;  // zero[i]: row i (processed) is tight on v
  };
  std::vector<Ray> rays;
  std::vector<bool> processed(rows.size(), false);
  for (std::size_t i : basis_rows) processed[i] = true;

  auto make_ray = [&](LatticeVector v) {
    Ray r{v.primitive(), std::vector<bool>(rows.size(), false)};
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (processed[i] && dot(rows[i], r.v) == 0) r.zero[i] = true;
    return r;
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rational> e(n, Rational(0));
    e[k] = 1;
    auto sol = solve_rational(b, e);
    Integer den = 1;
    for (const auto& s : *sol) den = lcm(den, denominator(s));
    std::vector<Integer> iv(n);
    for (std::size_t j = 0; j < n; ++j) iv[j] = numerator((*sol)[j] * Rational(den));
    rays.push_back(make_ray(LatticeVector(iv)));
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (processed[i]) continue;
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(rows[i], rays[r].v);
      if (val[r] > 0) pos.push_back(r);
      if (val[r] < 0) neg.push_back(r);
    }
    processed[i] = true;
    if (neg.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r)
        if (val[r] == 0) rays[r].zero[i] = true;
      continue;
    }

    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (val[r] < 0) continue;
      Ray kept = rays[r];
      if (val[r] == 0) kept.zero[i] = true;
      next.push_back(std::move(kept));
    }
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        // Combinatorial adjacency: no third ray is tight on every
        // constraint tight on both p and q.
        std::vector<bool> common(rows.size(), false);
        std::size_t count = 0;
        for (std::size_t c = 0; c < rows.size(); ++c)
          if (rays[p].zero[c] && rays[q].zero[c]) {
            common[c] = true;
            ++count;
          }
        if (count + 2 < n) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t == p || t == q) continue;
          bool covers = true;
          for (std::size_t c = 0; c < rows.size() && covers; ++c)
            if (common[c] && !rays[t].zero[c]) covers = false;
          if (covers) adjacent = false;
        }
        if (!adjacent) continue;
        LatticeVector v = val[p] * rays[q].v - val[q] * rays[p].v;
        if (v.is_zero()) continue;
        next.push_back(make_ray(std::move(v)));
      }
    }
    rays = std::move(next);
  }

  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  sort_unique(out.rays);
  return out;
}

}  // namespace detail

/// The dual cone {y : <y,g> >= 0 for every generator g} under the lattice
/// form. Pointed part rays come first (lexicographic), followed by +/- each
/// lineality basis vector.
inline RationalCone dual_cone(const RationalCone& C) {
  const LatticeSpace& L = C.ambient();
  std::vector<std::vector<Integer>> rows;
  for (const auto& g : C.generators()) rows.push_back(pairing_row(L, g));
  detail::InequalityCone ic = detail::cone_from_inequalities(L.rank(), rows);
  std::vector<LatticeVector> gens = ic.rays;
  for (const auto& l : ic.lineality) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  return RationalCone(L, std::move(gens), ic.lineality);
}

/// x lies in C iff it pairs nonnegatively with every generator of C's dual.
inline bool cone_contains(const RationalCone& C, const LatticeVector& x) {
  require_length(C.ambient(), x);
  const RationalCone dual = dual_cone(C);
  for (const auto& f : dual.generators())
    if (inner_product(C.ambient(), f, x) < 0) return false;
  return true;
}

struct ExtremalRays {
  bool pointed = true;
  std::vector<LatticeVector> rays;
  /// When the cone is not pointed, a basis of its lineality space.
  std::vector<LatticeVector> lineality;
};

/// Minimal generating set of a pointed cone, in generator order. A generator
/// g spans an extremal ray iff the dual generators vanishing on g have rank
/// n - 1.
inline ExtremalRays extremal_rays(const RationalCone& C) {
  const LatticeSpace& L = C.ambient();
  const std::size_t n = L.rank();
  ExtremalRays out;
  const RationalCone dual = dual_cone(C);
  std::vector<std::vector<Integer>> dual_gens;
  for (const auto& f : dual.generators()) dual_gens.push_back(f.coords());
  if (rank_of_vectors(dual_gens, n) < n) {
    out.pointed = false;
    // C's lineality is the annihilator of the dual's span.
    IntMatrix a(dual_gens.size(), n);
    for (std::size_t i = 0; i < dual_gens.size(); ++i) {
      std::vector<Integer> row = pairing_row(L, dual.generators()[i]);
      for (std::size_t j = 0; j < n; ++j) a(i, j) = row[j];
    }
    for (auto& k : integer_kernel(a)) out.lineality.emplace_back(std::move(k));
    return out;
  }
  for (const auto& g : C.generators()) {
    std::vector<std::vector<Integer>> tight;
    for (const auto& f : dual.generators())
      if (inner_product(L, f, g) == 0) tight.push_back(f.coords());
    if (rank_of_vectors(tight, n) + 1 == n) out.rays.push_back(g);
  }
  return out;
}

}  // namespace conewalk

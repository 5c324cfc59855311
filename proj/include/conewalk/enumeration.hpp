#pragma once

#include <conewalk/arithmetic.hpp>
#include <conewalk/errors.hpp>
#include <conewalk/lattice.hpp>
#include <conewalk/matrix.hpp>
#include <conewalk/reduction.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace conewalk {

/// A lattice together with a marking vector H of positive norm. H selects
/// the component of the positive cone and orients degrees <v,H>.
class MarkedLattice {
 public:
  MarkedLattice(LatticeSpace space, LatticeVector marking)
      : space_(std::move(space)), marking_(std::move(marking)) {
    require_length(space_, marking_);
    marking_norm_ = norm(space_, marking_);
    if (marking_norm_ <= 0)
      throw InputError("marking " + to_string(marking_) + " has norm " + marking_norm_.str() +
                       "; a marking needs positive norm");
  }

  const LatticeSpace& space() const { return space_; }
  const LatticeVector& marking() const { return marking_; }
  const Integer& marking_norm() const { return marking_norm_; }
  std::size_t rank() const { return space_.rank(); }

  Integer degree(const LatticeVector& v) const { return inner_product(space_, v, marking_); }

 private:
  LatticeSpace space_;
  LatticeVector marking_;
  Integer marking_norm_;
};

struct LinearConstraint {
  LatticeVector vector;
  Integer value;
};

/// Defining conditions of a class search: <v,v> = target_norm,
/// 0 <= <v,H> <= max_degree and <v,c.vector> = c.value for each constraint.
struct ClassQuery {
  Integer target_norm;
  Integer max_degree;
  bool primitive_only = false;
  std::vector<LinearConstraint> constraints;
};

/// Worker count for per-degree parallelism: CONEWALK_THREADS when set to a
/// positive integer, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("CONEWALK_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {

/// Integer points y with (y - c)^T Q (y - c) = R for a positive definite
/// integral Q. Exhaustive: the search is pruned only by exact bounds.
class ShellEnumerator {
 public:
  explicit ShellEnumerator(const IntMatrix& q) : dim_(q.rows()), gs_(upper_ldl(q)) {
    for (const auto& d : gs_.d)
      if (d <= 0) throw PreconditionError("quadratic form is not positive definite");
  }

  void enumerate(const std::vector<Rational>& center, const Rational& radius,
                 const std::function<void(const std::vector<Integer>&)>& emit) const {
    if (radius < 0) return;
    if (dim_ == 0) {
      if (radius == 0) emit({});
      return;
    }
    std::vector<Integer> y(dim_);
    std::vector<Rational> x(dim_);
    descend(dim_ - 1, radius, center, y, x, emit);
  }

 private:
  void descend(std::size_t i, const Rational& budget, const std::vector<Rational>& c,
               std::vector<Integer>& y, std::vector<Rational>& x,
               const std::function<void(const std::vector<Integer>&)>& emit) const {
    Rational shift = c[i];
    for (std::size_t j = i + 1; j < dim_; ++j) shift -= gs_.mu(i, j) * x[j];
    const Rational slack = budget / gs_.d[i];
    if (i == 0) {
      // Last coordinate: solve d_0 (y_0 - shift)^2 = budget exactly.
      Integer num = numerator(slack), den = denominator(slack), rn, rd;
      if (!is_square(num, &rn) || !is_square(den, &rd)) return;
      const Rational root(rn, rd);
      for (int sign : {-1, 1}) {
        if (sign == 1 && root == 0) break;
        Rational cand = shift + (sign == 1 ? root : Rational(-root));
        if (denominator(cand) != 1) continue;
        y[0] = numerator(cand);
        emit(y);
      }
      return;
    }
    Integer lo, hi;
    if (!integer_window(shift, slack, lo, hi)) return;
    for (Integer v = lo; v <= hi; ++v) {
      y[i] = v;
      x[i] = Rational(v) - c[i];
      const Rational off = Rational(v) - shift;
      descend(i - 1, budget - gs_.d[i] * off * off, c, y, x, emit);
    }
  }

  std::size_t dim_;
  GramSchmidt gs_;
};

inline void sort_unique(std::vector<LatticeVector>& vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

/// Runs fn(k) for k in [0, count) on up to worker_count() threads.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          fn(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// All v with <v,v> = target_norm in a negative definite lattice, both signs,
/// in lexicographic order.
inline std::vector<LatticeVector> short_vectors_definite(const LatticeSpace& gram_neg,
                                                         const Integer& target_norm) {
  if (target_norm >= 0) throw PreconditionError("short_vectors_definite needs a negative target");
  Signature sig = signature(gram_neg);
  if (sig.positive != 0)
    throw PreconditionError("short_vectors_definite needs a negative definite lattice");
  const std::size_t n = gram_neg.rank();
  IntMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = -gram_neg.entry(i, j);
  IntMatrix t = lll_reduce_gram(q);
  detail::ShellEnumerator shell(t.transpose() * q * t);
  std::vector<LatticeVector> out;
  shell.enumerate(std::vector<Rational>(n), Rational(-target_norm),
                  [&](const std::vector<Integer>& y) { out.emplace_back(t * y); });
  detail::sort_unique(out);
  return out;
}

/// Every nonzero v with <v,v> = q.target_norm, 0 <= <v,H> <= q.max_degree and
/// the extra linear constraints, filtered to primitive vectors on request.
/// Output is degree-major, lexicographic within a degree. The search fibers
/// over d = <v,H>: each fiber is an affine translate of a sublattice of H^perp,
/// where the form is negative definite, so each fiber is a finite ellipsoid
/// shell enumerated exactly.
inline std::vector<LatticeVector> classes_of_norm(const MarkedLattice& M, const ClassQuery& q) {
  const LatticeSpace& L = M.space();
  const std::size_t n = L.rank();
  if (q.max_degree < 0) throw InputError("max_degree must be nonnegative");
  for (const auto& c : q.constraints) require_length(L, c.vector);

  IntMatrix a(1 + q.constraints.size(), n);
  {
    auto put = [&](std::size_t row, const LatticeVector& v) {
      std::vector<Integer> g = pairing_row(L, v);
      for (std::size_t j = 0; j < n; ++j) a(row, j) = g[j];
    };
    put(0, M.marking());
    for (std::size_t k = 0; k < q.constraints.size(); ++k) put(k + 1, q.constraints[k].vector);
  }
  const ColumnEchelon ce = column_echelon(a);

  // Kernel basis, LLL-reduced for the (positive definite) negated form.
  std::vector<std::vector<Integer>> kernel;
  for (std::size_t j = ce.rank(); j < n; ++j) kernel.push_back(ce.transform.column(j));
  const std::size_t k = kernel.size();
  IntMatrix basis = IntMatrix::from_columns(kernel, n);  // n x k
  IntMatrix q_form(k, k);
  if (k > 0) {
    IntMatrix gb = L.gram() * basis;
    q_form = basis.transpose() * gb;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) q_form(i, j) = -q_form(i, j);
    IntMatrix t = lll_reduce_gram(q_form);
    basis = basis * t;
    q_form = t.transpose() * q_form * t;
  }
  const detail::ShellEnumerator shell(q_form);
  const RatMatrix q_rat = to_rational(q_form);
  const IntMatrix gram_basis = k > 0 ? IntMatrix(L.gram() * basis) : IntMatrix(n, 0);

  const std::size_t degrees = static_cast<std::size_t>(q.max_degree) + 1;
  std::vector<std::vector<LatticeVector>> fibers(degrees);
  detail::parallel_for(degrees, [&](std::size_t d) {
    std::vector<Integer> rhs{Integer(d)};
    for (const auto& c : q.constraints) rhs.push_back(c.value);
    auto v0 = solve_integer(ce, rhs);
    if (!v0) return;
    const LatticeVector base(*v0);
    // <v0 + B y, same> = a + 2 b.y - y^T Q y
    const Integer a0 = norm(L, base);
    std::vector<Rational> b(k);
    for (std::size_t i = 0; i < k; ++i) {
      Integer s = 0;
      for (std::size_t r = 0; r < n; ++r) s += gram_basis(r, i) * base[r];
      b[i] = Rational(s);
    }
    std::vector<Rational> center(k);
    if (k > 0) center = *solve_rational(q_rat, b);
    Rational radius = Rational(a0 - q.target_norm);
    for (std::size_t i = 0; i < k; ++i) radius += b[i] * center[i];

    std::vector<LatticeVector>& out = fibers[d];
    shell.enumerate(center, radius, [&](const std::vector<Integer>& y) {
      LatticeVector v = base;
      for (std::size_t i = 0; i < k; ++i)
        if (y[i] != 0)
          for (std::size_t r = 0; r < n; ++r) v[r] += basis(r, i) * y[i];
      if (v.is_zero()) return;
      if (q.primitive_only && !v.is_primitive()) return;
      out.push_back(std::move(v));
    });
    detail::sort_unique(out);
  });

  std::vector<LatticeVector> result;
  for (auto& f : fibers)
    for (auto& v : f) result.push_back(std::move(v));
  return result;
}

/// Roots (norm -2 vectors) up to a degree bound. Roots of positive degree are
/// returned in `roots`; roots orthogonal to the marking are reported apart,
/// because a marking on a mirror cannot orient a chamber walk.
struct RootSet {
  std::vector<LatticeVector> roots;
  std::vector<LatticeVector> walls_through_marking;
  Integer max_degree;

  bool marking_on_wall() const { return !walls_through_marking.empty(); }
};

inline RootSet root_set(const MarkedLattice& M, const Integer& max_degree) {
  ClassQuery q{Integer(-2), max_degree, false, {}};
  RootSet rs;
  rs.max_degree = max_degree;
  for (auto& r : classes_of_norm(M, q)) {
    if (M.degree(r) == 0)
      rs.walls_through_marking.push_back(std::move(r));
    else
      rs.roots.push_back(std::move(r));
  }
  return rs;
}

}  // namespace conewalk

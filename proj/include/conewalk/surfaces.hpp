#pragma once

#include <conewalk/arithmetic.hpp>
#include <conewalk/cones.hpp>
#include <conewalk/enumeration.hpp>
#include <conewalk/errors.hpp>
#include <conewalk/lattice.hpp>
#include <conewalk/matrix.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conewalk {

enum class SurfaceKind { kBlowupPlane, kK3, kAbelian, kCustom };

inline std::string to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::kBlowupPlane:
      return "blowup_plane";
    case SurfaceKind::kK3:
      return "k3";
    case SurfaceKind::kAbelian:
      return "abelian";
    case SurfaceKind::kCustom:
      return "custom";
  }
  return "?";
}

struct SurfaceModel {
  MarkedLattice lattice;
  LatticeVector canonical;  // K in lattice coordinates
  SurfaceKind kind = SurfaceKind::kCustom;
  std::size_t blown_up_points = 0;  // meaningful for kBlowupPlane
  std::string notes;

  const LatticeSpace& space() const { return lattice.space(); }
};

/// Marking for the blow-up of the plane at n points: -K in the del Pezzo range,
/// otherwise d*H - sum E_i with the least d making it positive.
inline LatticeVector default_blowup_marking(std::size_t n) {
  std::vector<Integer> h(n + 1, Integer(-1));
  if (n <= 8) {
    h[0] = 3;
  } else {
    Integer d = isqrt(Integer(n)) + 1;
    h[0] = d;
  }
  return LatticeVector(std::move(h));
}

/// The plane blown up at n very general points, basis (H, E_1, ..., E_n).
inline SurfaceModel blowup_plane(std::size_t n) {
  std::vector<long long> diag(n + 1, -1);
  diag[0] = 1;
  std::vector<std::string> labels{"H"};
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("E" + std::to_string(i));
  IntMatrix g(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i) g(i, i) = diag[i];
  std::vector<Integer> k(n + 1, Integer(1));
  k[0] = -3;
  return SurfaceModel{MarkedLattice(LatticeSpace(std::move(g), std::move(labels)), default_blowup_marking(n)),
                      LatticeVector(std::move(k)), SurfaceKind::kBlowupPlane, n,
                      "plane blown up at " + std::to_string(n) + " points"};
}

inline SurfaceModel k3_surface(LatticeSpace L, LatticeVector marking, std::string notes = {}) {
  const std::size_t n = L.rank();
  return SurfaceModel{MarkedLattice(std::move(L), std::move(marking)), LatticeVector::zero(n), SurfaceKind::kK3, 0,
                      std::move(notes)};
}

// ---------------------------------------------------------------------------
// Elliptic fibrations

/// Mordell-Weil rank from Shioda-Tate: rho - 2 - sum (m_v - 1).
inline Integer mordell_weil_rank(std::size_t picard_rank, const std::vector<unsigned>& profiles) {
  if (picard_rank < 2) throw PreconditionError("Shioda-Tate needs Picard rank at least 2");
  Integer r = Integer(picard_rank) - 2;
  for (unsigned m : profiles) {
    if (m == 0) throw InconsistentDataError("reducible fiber profile entries must be at least 1");
    r -= Integer(m) - 1;
  }
  if (r < 0)
    throw InconsistentDataError("fiber components exceed the Picard rank: Mordell-Weil rank would be " + r.str());
  return r;
}

struct FibrationData {
  /// Fiber class e; optional because hypothesis checks can run on asserted
  /// facts alone.
  std::optional<LatticeVector> fiber_class;
  std::vector<unsigned> reducible_fiber_profiles;
  std::optional<Integer> mw_rank_hint;
  // False when nothing is known about the reducible fibers; the profile list
  // is then meaningless and no hypothesis depending on it can pass.
  bool profiles_known = true;
  // Positivity of the Mordell-Weil rank asserted without a value.
  bool mw_positive_asserted = false;
};

inline void validate_fibration(const MarkedLattice& M, const FibrationData& f) {
  if (!f.fiber_class) return;
  const LatticeVector& e = *f.fiber_class;
  require_length(M.space(), e);
  if (!e.is_primitive()) throw InputError("fiber class " + to_string(e) + " is not primitive");
  if (norm(M.space(), e) != 0) throw InputError("fiber class " + to_string(e) + " is not isotropic");
  if (M.degree(e) <= 0) throw InputError("fiber class " + to_string(e) + " does not pair positively with the marking");
  for (unsigned m : f.reducible_fiber_profiles)
    if (m == 0) throw InputError("reducible fiber profile entries must be at least 1");
}

/// Rank of the root sublattice of e^perp / e for a primitive isotropic e.
/// For a nef fiber class on a K3 surface these roots span the lattice of the
/// reducible fibers' non-identity components, so rank 0 matches a fibration
/// whose fibers are all irreducible.
inline std::size_t fiber_root_rank(const LatticeSpace& L, const LatticeVector& e) {
  if (norm(L, e) != 0 || !e.is_primitive())
    throw PreconditionError("fiber_root_rank needs a primitive isotropic class");
  OrthogonalComplement oc = orthogonal_complement(L, e);
  const std::size_t k = oc.basis.size();  // n - 1
  if (k < 2) return 0;
  // Coordinates c of e in the complement basis, then a unimodular basis
  // W of Z^k with first column c; the remaining columns span a complement.
  IntMatrix b = IntMatrix::from_columns([&] {
    std::vector<std::vector<Integer>> cols;
    for (const auto& v : oc.basis) cols.push_back(v.coords());
    return cols;
  }(), L.rank());
  auto c = solve_integer(b, e.coords());
  if (!c) throw Error("internal: isotropic class missing from its own complement");
  IntMatrix row(1, k);
  for (std::size_t j = 0; j < k; ++j) row(0, j) = (*c)[j];
  const ColumnEchelon ce = column_echelon(row);  // c^T U = (1, 0, ..., 0)
  // W = U^{-T}: solve U^T W = I column by column.
  const RatMatrix ut = to_rational(ce.transform.transpose());
  IntMatrix w(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Rational> ej(k, Rational(0));
    ej[j] = 1;
    auto col = solve_rational(ut, ej);
    for (std::size_t i = 0; i < k; ++i) w(i, j) = numerator((*col)[i]);
  }
  IntMatrix rest(k, k - 1);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 1; j < k; ++j) rest(i, j - 1) = w(i, j);
  const IntMatrix q = rest.transpose() * oc.gram * rest;
  const LatticeSpace quotient(q);
  std::vector<std::vector<Integer>> roots;
  for (const auto& r : short_vectors_definite(quotient, Integer(-2))) roots.push_back(r.coords());
  return rank_of_vectors(roots, k - 1);
}

enum class Verdict { kCriteriaMet, kInconclusive };

inline std::string to_string(Verdict v) { return v == Verdict::kCriteriaMet ? "criteria_met" : "inconclusive"; }

struct HypothesisResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct NonArithReport {
  Verdict verdict = Verdict::kInconclusive;
  std::vector<HypothesisResult> checked_hypotheses;
  std::string explanation;

  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    for (const auto& h : checked_hypotheses)
      if (!h.passed) out.push_back(h.name);
    return out;
  }
};

/// Evaluates the four lattice-level hypotheses under which a K3 surface's
/// automorphism group is not commensurable with an arithmetic group:
/// H1 rho >= 4, H2 a fibration with no reducible fibers, H3 a second
/// fibration of positive Mordell-Weil rank, H4 a (-2)-curve. Geometric facts
/// are taken as asserted inputs.
inline NonArithReport check_nonarithmetic(std::size_t picard_rank, const FibrationData& fib1,
                                          const FibrationData& fib2, bool has_minus2_curve) {
  if (fib1.fiber_class && fib2.fiber_class) {
    const LatticeVector& a = *fib1.fiber_class;
    const LatticeVector& b = *fib2.fiber_class;
    if (a.size() != b.size()) throw InputError("fiber classes have different lengths");
    std::vector<std::vector<Integer>> both{a.coords(), b.coords()};
    if (rank_of_vectors(both, a.size()) < 2)
      throw InputError("fiber classes " + to_string(a) + " and " + to_string(b) +
                       " are proportional; they do not define two fibrations");
  }
  NonArithReport rep;
  rep.checked_hypotheses.push_back({"H1 picard_rank>=4", picard_rank >= 4,
                                    "rho = " + std::to_string(picard_rank)});
  {
    const bool ok = fib1.profiles_known && fib1.reducible_fiber_profiles.empty();
    std::string detail = !fib1.profiles_known ? "fiber types not asserted"
                         : ok                 ? "no reducible fibers"
                                              : "reducible fibers with component counts";
    for (unsigned m : fib1.reducible_fiber_profiles) detail += " " + std::to_string(m);
    rep.checked_hypotheses.push_back({"H2 fib1_no_reducible_fibers", ok, detail});
  }
  {
    const std::string name = "H3 fib2_mw_rank_positive";
    if (fib2.mw_rank_hint) {
      rep.checked_hypotheses.push_back({name, *fib2.mw_rank_hint > 0, "rank " + fib2.mw_rank_hint->str() + " (asserted)"});
    } else if (fib2.mw_positive_asserted) {
      rep.checked_hypotheses.push_back({name, true, "positive rank asserted"});
    } else if (fib2.profiles_known) {
      const Integer mw =
          picard_rank >= 2 ? mordell_weil_rank(picard_rank, fib2.reducible_fiber_profiles) : Integer(0);
      rep.checked_hypotheses.push_back({name, mw > 0, "rank " + mw.str() + " (Shioda-Tate)"});
    } else {
      rep.checked_hypotheses.push_back({name, false, "Mordell-Weil rank not asserted"});
    }
  }
  rep.checked_hypotheses.push_back(
      {"H4 has_minus2_curve", has_minus2_curve, has_minus2_curve ? "(-2)-curve asserted" : "no (-2)-curve asserted"});

  const auto failed = rep.failed();
  rep.verdict = failed.empty() ? Verdict::kCriteriaMet : Verdict::kInconclusive;
  if (failed.empty()) {
    rep.explanation = "the corollary's hypotheses hold";
  } else {
    rep.explanation = "inconclusive: failed";
    for (const auto& f : failed) rep.explanation += " " + f;
  }
  return rep;
}

/// True iff sum a_i v_i = -K exactly.
inline bool verify_anticanonical_decomposition(const SurfaceModel& S,
                                               const std::vector<std::pair<LatticeVector, Rational>>& parts) {
  if (parts.empty()) throw PreconditionError("anticanonical decomposition needs at least one part");
  const std::size_t n = S.space().rank();
  std::vector<Rational> sum(n, Rational(0));
  for (const auto& [v, a] : parts) {
    require_length(S.space(), v);
    for (std::size_t i = 0; i < n; ++i) sum[i] += a * Rational(v[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (sum[i] != Rational(-S.canonical[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Named examples

/// Points on each of the nine lines of the dual Hesse configuration (twelve
/// points, four per line, three lines per point).
inline const std::vector<std::vector<std::size_t>>& dual_hesse_incidence() {
  static const std::vector<std::vector<std::size_t>> table = {
      {0, 3, 6, 9}, {1, 3, 7, 10}, {2, 3, 8, 11}, {0, 4, 8, 10}, {1, 4, 6, 11},
      {2, 4, 7, 9}, {0, 5, 7, 11}, {1, 5, 8, 9},  {2, 5, 6, 10}};
  return table;
}

/// Strict transforms H - sum of the exceptional classes over each line.
inline std::vector<LatticeVector> hesse_line_classes() {
  std::vector<LatticeVector> out;
  for (const auto& pts : dual_hesse_incidence()) {
    LatticeVector v = LatticeVector::basis(13, 0);
    for (std::size_t p : pts) v[p + 1] = -1;
    out.push_back(std::move(v));
  }
  return out;
}

struct CheckOutcome {
  std::string label;
  std::string expected;
  std::string actual;
  bool passed = false;
};

struct ExampleEntry {
  std::string name;
  std::string description;
  SurfaceModel model;
  std::vector<LatticeVector> named_classes;  // fibration classes, lines, curve generators
};

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {"k3_rank3",      "ex63_k3", "exe_abelian", "blowup6",
                                                 "blowup9_cubics", "hesse12", "blowup1"};
  return names;
}

inline ExampleEntry example_registry(const std::string& name) {
  if (name == "k3_rank3")
    return {name, "K3 surface of Picard rank 3 with an elliptic fibration and two (-2)-sections",
            k3_surface(LatticeSpace(IntMatrix{{0, 1, 1}, {1, -2, 0}, {1, 0, -2}}, {"P", "C1", "C2"}), {3, 1, 1}),
            {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  if (name == "ex63_k3")
    return {name, "double cover of P1xP1 branched along a (4,4) curve, two elliptic fibrations",
            k3_surface(LatticeSpace(IntMatrix{{0, 2, 1, 1}, {2, 0, 1, 1}, {1, 1, -2, 0}, {1, 1, 0, -2}},
                                    {"O(1,0)", "O(0,1)", "E1", "F2"}),
                       {1, 1, 0, 0}),
            {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  if (name == "exe_abelian")
    return {name, "product E x E of an elliptic curve without CM; basis E x 0, 0 x E, diagonal",
            SurfaceModel{MarkedLattice(LatticeSpace(IntMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {"Ex0", "0xE", "D"}),
                                       {1, 1, 1}),
                         LatticeVector::zero(3), SurfaceKind::kAbelian, 0, "abelian surface"},
            {}};
  if (name == "blowup6")
    return {name, "cubic surface: plane blown up at 6 general points", blowup_plane(6), {}};
  if (name == "blowup9_cubics")
    return {name, "plane blown up at the 9 base points of a pencil of cubics", blowup_plane(9), {}};
  if (name == "hesse12") {
    return {name, "plane blown up at the 12 points of the dual Hesse configuration", blowup_plane(12),
            hesse_line_classes()};
  }
  if (name == "blowup1") {
    SurfaceModel m = blowup_plane(1);
    return {name, "plane blown up at one point; curve classes E, H - E, H", m, {{0, 1}, {1, -1}, {1, 0}}};
  }
  std::string valid;
  for (const auto& n : example_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw LookupError("unknown example '" + name + "'; valid names: " + valid);
}

namespace detail {

inline CheckOutcome check(std::string label, const std::string& expected, const std::string& actual) {
  return CheckOutcome{std::move(label), expected, actual, expected == actual};
}

inline std::string join_vectors(std::vector<LatticeVector> vs) {
  std::sort(vs.begin(), vs.end());
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : " ") + to_string(v);
  return s;
}

inline CheckOutcome signature_check(const LatticeSpace& L) {
  return check("signature", to_string(Signature{1, L.rank() - 1}), to_string(signature(L)));
}

inline std::vector<LatticeVector> minus_one_classes(const SurfaceModel& S, const Integer& max_degree) {
  ClassQuery q{Integer(-1), max_degree, false, {{S.canonical, Integer(-1)}}};
  return classes_of_norm(S.lattice, q);
}

}  // namespace detail

/// Recomputes the facts recorded for a named example and compares them with
/// the expected values.
inline std::vector<CheckOutcome> verify_example(const std::string& name) {
  using detail::check;
  const ExampleEntry ex = example_registry(name);
  const SurfaceModel& S = ex.model;
  const LatticeSpace& L = S.space();
  std::vector<CheckOutcome> out;
  out.push_back(detail::signature_check(L));

  if (name == "k3_rank3") {
    out.push_back(check("even", "true", is_even(L) ? "true" : "false"));
    out.push_back(check("determinant", "4", determinant(L).str()));
    // Nef isotropic classes against all roots of degree <= 12.
    const auto roots = root_set(S.lattice, 12).roots;
    std::vector<LatticeVector> nef;
    for (auto& v : classes_of_norm(S.lattice, {Integer(0), Integer(12), true, {}}))
      if (is_nef_against(v, roots, L)) nef.push_back(v);
    out.push_back(check("nef isotropic rays (degree<=12, roots<=12)", "(1,0,0)", detail::join_vectors(nef)));
    out.push_back(check("mordell-weil rank", "1", mordell_weil_rank(L.rank(), {}).str()));
    const LatticeVector& e = ex.named_classes[0];
    out.push_back(check("sections <e,C1>,<e,C2>", "1,1",
                        inner_product(L, e, ex.named_classes[1]).str() + "," +
                            inner_product(L, e, ex.named_classes[2]).str()));
  } else if (name == "ex63_k3") {
    out.push_back(check("even", "true", is_even(L) ? "true" : "false"));
    out.push_back(check("determinant", "-32", determinant(L).str()));
    for (std::size_t i = 2; i < 4; ++i)
      out.push_back(check(to_string(ex.named_classes[i]) + "^2", "-2", norm(L, ex.named_classes[i]).str()));
    FibrationData f1{ex.named_classes[0], {}, std::nullopt}, f2{ex.named_classes[1], {}, std::nullopt};
    for (const auto* f : {&f1, &f2}) {
      validate_fibration(S.lattice, *f);
      out.push_back(check("roots in e^perp/e for e=" + to_string(*f->fiber_class), "0",
                          std::to_string(fiber_root_rank(L, *f->fiber_class))));
    }
    auto rep = check_nonarithmetic(L.rank(), f1, f2, true);
    out.push_back(check("non-arithmeticity hypotheses", "criteria_met", to_string(rep.verdict)));
  } else if (name == "exe_abelian") {
    out.push_back(check("even", "true", is_even(L) ? "true" : "false"));
    out.push_back(check("determinant", "2", determinant(L).str()));
    out.push_back(check("canonical class", "(0,0,0)", to_string(S.canonical)));
  } else if (name == "blowup6") {
    out.push_back(check("K^2", "3", norm(L, S.canonical).str()));
    out.push_back(check("(-1)-classes", "27", std::to_string(detail::minus_one_classes(S, 3).size())));
  } else if (name == "blowup9_cubics") {
    out.push_back(check("K^2", "0", norm(L, S.canonical).str()));
    out.push_back(check("mordell-weil rank", "8", mordell_weil_rank(L.rank(), {}).str()));
    std::string counts;
    std::size_t prev = 0;
    bool increasing = true;
    for (int d : {3, 6, 9, 12}) {
      const std::size_t c = detail::minus_one_classes(S, d).size();
      increasing = increasing && c > prev;
      prev = c;
      counts += (counts.empty() ? "" : ",") + std::to_string(c);
    }
    out.push_back(check("(-1)-classes at degree 3,6,9,12 strictly increasing", "true",
                        increasing ? "true" : "false (" + counts + ")"));
    std::string sections;
    for (std::size_t i = 1; i < L.rank(); ++i)
      sections += (i > 1 ? "," : "") + inner_product(L, -S.canonical, LatticeVector::basis(L.rank(), i)).str();
    out.push_back(check("<-K,E_i>", "1,1,1,1,1,1,1,1,1", sections));
  } else if (name == "hesse12") {
    const auto& lines = ex.named_classes;
    bool self = true, disjoint = true;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      self = self && norm(L, lines[i]) == -3;
      for (std::size_t j = i + 1; j < lines.size(); ++j) disjoint = disjoint && inner_product(L, lines[i], lines[j]) == 0;
    }
    out.push_back(check("L_i^2 = -3", "true", self ? "true" : "false"));
    out.push_back(check("<L_i,L_j> = 0", "true", disjoint ? "true" : "false"));
    std::vector<std::pair<LatticeVector, Rational>> parts;
    for (const auto& l : lines) parts.emplace_back(l, Rational(1, 3));
    out.push_back(check("sum (1/3) L_i = -K", "true", verify_anticanonical_decomposition(S, parts) ? "true" : "false"));
    out.push_back(check("rho(Y) after contracting the lines", "4", std::to_string(L.rank() - lines.size())));
  } else if (name == "blowup1") {
    RationalCone curves(L, ex.named_classes);
    auto ext = extremal_rays(curves);
    out.push_back(check("extremal curve rays", "(0,1) (1,-1)", detail::join_vectors(ext.rays)));
    out.push_back(check("nef rays", "(1,-1) (1,0)", detail::join_vectors(dual_cone(curves).generators())));
  }
  return out;
}

}  // namespace conewalk

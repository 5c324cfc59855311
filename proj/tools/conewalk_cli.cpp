// conewalk: command-line front end for the lattice, cone and isometry tools.
// Exit codes: 0 success, 1 verification mismatch, 2 bad input, 3 internal error.

#include <conewalk/cones.hpp>
#include <conewalk/descriptor.hpp>
#include <conewalk/enumeration.hpp>
#include <conewalk/hyperviz.hpp>
#include <conewalk/isometry.hpp>
#include <conewalk/surfaces.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace conewalk;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct Globals {
  bool json = false;
};

Json vectors_json(const std::vector<LatticeVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vector_to_json(v));
  return a;
}

std::string joined(const std::vector<LatticeVector>& vs) {
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : " ") + to_string(v);
  return s.empty() ? "(none)" : s;
}

void emit(const Globals& g, const Json& j, const std::string& text) {
  if (g.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::vector<unsigned> parse_profiles(const std::string& text) {
  std::vector<unsigned> out;
  if (text.empty()) return out;
  const LatticeVector v = parse_vector(text);
  for (const auto& c : v.coords()) {
    if (c < 0 || c > 1000000) throw InputError("fiber profile entries must be component counts >= 0, got " + c.str());
    out.push_back(c.convert_to<unsigned>());
  }
  return out;
}

std::size_t parse_rank(const std::string& text, const char* what) {
  const Integer v = parse_integer(text);
  if (v < 0 || v > 1000000) throw InputError(std::string(what) + " must be a non-negative integer, got " + text);
  return v.convert_to<std::size_t>();
}

// ---- info ----------------------------------------------------------------

int cmd_info(const Globals& g, const std::string& file) {
  const auto d = read_descriptor_file(file);
  const auto& L = d.space;
  const Signature sig = signature(L);
  const bool hyperbolic = sig.positive == 1;
  std::ostringstream t;
  t << "rank: " << L.rank() << "\n"
    << "signature: " << to_string(sig) << "\n"
    << "determinant: " << determinant(L) << "\n"
    << "even: " << (is_even(L) ? "true" : "false") << "\n"
    << "hyperbolic: " << (hyperbolic ? "true" : "false") << "\n";
  if (!L.labels().empty()) {
    t << "labels:";
    for (const auto& s : L.labels()) t << " " << s;
    t << "\n";
  }
  if (d.marking) t << "marking: " << to_string(*d.marking) << " (norm " << norm(L, *d.marking) << ")\n";
  if (d.canonical) t << "canonical: " << to_string(*d.canonical) << " (K^2 = " << norm(L, *d.canonical) << ")\n";
  Json j;
  j["rank"] = L.rank();
  j["signature"] = {sig.positive, sig.negative};
  j["determinant"] = detail::integer_to_json(determinant(L));
  j["even"] = is_even(L);
  j["hyperbolic"] = hyperbolic;
  j["descriptor"] = descriptor_to_json(d);
  emit(g, j, t.str());
  return kOk;
}

// ---- classes -------------------------------------------------------------

int cmd_classes(const Globals& g, const std::string& file, const std::string& norm_text,
                const std::string& degree_text, bool primitive, const std::vector<std::string>& constraints) {
  const auto d = read_descriptor_file(file);
  const MarkedLattice M = d.marked();
  ClassQuery q{parse_integer(norm_text), parse_integer(degree_text), primitive, {}};
  for (const auto& c : constraints) {
    const auto eq = c.rfind('=');
    if (eq == std::string::npos) throw InputError("constraint '" + c + "' is not of the form vec=val");
    LatticeVector v = parse_vector(c.substr(0, eq));
    require_length(M.space(), v);
    q.constraints.push_back({std::move(v), parse_integer(c.substr(eq + 1))});
  }
  const auto found = classes_of_norm(M, q);
  std::ostringstream t;
  for (const auto& v : found) t << to_string(v) << " degree " << M.degree(v) << "\n";
  t << "count: " << found.size() << "\n";
  Json j;
  j["norm"] = detail::integer_to_json(q.target_norm);
  j["max_degree"] = detail::integer_to_json(q.max_degree);
  j["primitive"] = primitive;
  j["classes"] = vectors_json(found);
  j["count"] = found.size();
  emit(g, j, t.str());
  return kOk;
}

// ---- walk ----------------------------------------------------------------

int cmd_walk(const Globals& g, const std::string& file, const std::string& vector_text,
             const std::string& degree_text, const std::string& policy_text) {
  const auto d = read_descriptor_file(file);
  const MarkedLattice M = d.marked();
  const LatticeVector x = parse_vector(vector_text);
  require_length(M.space(), x);
  const Integer max_degree = parse_integer(degree_text);
  if (max_degree < 1) throw InputError("--max-degree must be at least 1");
  WalkPolicy policy;
  if (policy_text == "most-negative")
    policy = WalkPolicy::kMostNegative;
  else if (policy_text == "first")
    policy = WalkPolicy::kFirstInOrder;
  else
    throw InputError("--policy must be most-negative or first, got '" + policy_text + "'");

  const RootSet roots = root_set(M, max_degree);
  if (roots.marking_on_wall())
    throw InputError("marking lies on the wall of root " + to_string(roots.walls_through_marking.front()) +
                     "; choose an ample marking");
  const auto result = chamber_walk(M, roots.roots, x, policy);
  const Integer bound = separating_root_degree_bound(M, x);
  const bool complete = bound <= max_degree;
  const std::string caveat = "nef against roots of degree ≤ " + max_degree.str();

  std::ostringstream t;
  t << "input: " << to_string(x) << "\n"
    << "image: " << to_string(result.image) << "\n"
    << "word: " << joined(result.word) << "\n"
    << "steps: " << result.length() << "\n"
    << "roots enumerated: " << roots.roots.size() << "\n"
    << caveat << "\n"
    << "separating roots have degree ≤ " << bound << ": "
    << (complete ? "all enumerated, image is in the chamber of the marking"
                 : "not all enumerated, raise --max-degree to certify")
    << "\n";
  Json j;
  j["input"] = vector_to_json(x);
  j["image"] = vector_to_json(result.image);
  j["word"] = vectors_json(result.word);
  j["steps"] = result.length();
  j["roots_enumerated"] = roots.roots.size();
  j["max_degree"] = detail::integer_to_json(max_degree);
  j["caveat"] = caveat;
  j["separating_degree_bound"] = detail::integer_to_json(bound);
  j["complete"] = complete;
  emit(g, j, t.str());
  return kOk;
}

// ---- dual / rays ---------------------------------------------------------

RationalCone cone_from(const LatticeDescriptor& d, const std::string& gens) {
  auto vs = parse_vector_list(gens);
  for (const auto& v : vs) require_length(d.space, v);
  return RationalCone(d.space, std::move(vs));
}

int cmd_dual(const Globals& g, const std::string& file, const std::string& gens) {
  const auto d = read_descriptor_file(file);
  const RationalCone dual = dual_cone(cone_from(d, gens));
  std::ostringstream t;
  t << "dual generators: " << joined(dual.generators()) << "\n";
  t << "lineality: " << joined(dual.lineality()) << "\n";
  Json j;
  j["generators"] = vectors_json(dual.generators());
  j["lineality"] = vectors_json(dual.lineality());
  emit(g, j, t.str());
  return kOk;
}

int cmd_rays(const Globals& g, const std::string& file, const std::string& gens) {
  const auto d = read_descriptor_file(file);
  const ExtremalRays r = extremal_rays(cone_from(d, gens));
  std::ostringstream t;
  t << "pointed: " << (r.pointed ? "true" : "false") << "\n";
  t << "extremal rays: " << joined(r.rays) << "\n";
  t << "lineality: " << joined(r.lineality) << "\n";
  Json j;
  j["pointed"] = r.pointed;
  j["rays"] = vectors_json(r.rays);
  j["lineality"] = vectors_json(r.lineality);
  emit(g, j, t.str());
  return kOk;
}

// ---- classify ------------------------------------------------------------

int cmd_classify(const Globals& g, const std::string& file, const std::string& matrix_text) {
  const auto d = read_descriptor_file(file);
  const MarkedLattice M = d.marked();
  const LatticeIsometry iso = make_isometry(M.space(), parse_matrix(matrix_text));
  const IsometryKind k = classify(M, iso);
  std::string factors;
  Json jf = Json::array();
  for (const auto& f : k.factors) {
    factors += (factors.empty() ? "" : " ") + ("(" + to_string(f.factor) + ")");
    if (f.multiplicity > 1) factors += "^" + std::to_string(f.multiplicity);
    jf.push_back({{"factor", to_string(f.factor)}, {"multiplicity", f.multiplicity}});
  }
  std::ostringstream t;
  t << "type: " << to_string(k.type) << "\n"
    << "characteristic polynomial: " << to_string(k.charpoly) << "\n"
    << "factors: " << factors << "\n";
  Json j;
  j["type"] = to_string(k.type);
  j["charpoly"] = to_string(k.charpoly);
  j["factors"] = jf;
  if (k.order) {
    t << "order: " << *k.order << "\n";
    j["order"] = detail::integer_to_json(*k.order);
  }
  if (k.fixed_ray) {
    t << "fixed isotropic ray: " << to_string(*k.fixed_ray) << "\n";
    j["fixed_ray"] = vector_to_json(*k.fixed_ray);
  }
  if (k.certificate) {
    t << "certificate (non-cyclotomic factor): " << to_string(*k.certificate) << "\n";
    j["certificate"] = to_string(*k.certificate);
  }
  emit(g, j, t.str());
  return kOk;
}

// ---- mw-rank / nonarith --------------------------------------------------

int cmd_mw_rank(const Globals& g, const std::string& rho, const std::string& profiles) {
  const Integer r = mordell_weil_rank(parse_rank(rho, "--rho"), parse_profiles(profiles));
  Json j;
  j["mw_rank"] = detail::integer_to_json(r);
  emit(g, j, r.str() + "\n");
  return kOk;
}

struct NonarithArgs {
  std::string rho;
  bool fib1_irreducible = false;
  std::optional<std::string> fib1_profiles;
  bool fib2_mw_positive = false;
  std::optional<std::string> fib2_profiles;
  std::optional<std::string> fib2_mw_rank;
  bool has_minus2 = false;
};

int cmd_nonarith(const Globals& g, const NonarithArgs& a) {
  FibrationData f1, f2;
  if (a.fib1_irreducible) {
    if (a.fib1_profiles && !parse_profiles(*a.fib1_profiles).empty())
      throw InputError("--fib1-irreducible contradicts a non-empty --fib1-profiles");
  } else if (a.fib1_profiles) {
    f1.reducible_fiber_profiles = parse_profiles(*a.fib1_profiles);
  } else {
    f1.profiles_known = false;
  }
  if (a.fib2_profiles)
    f2.reducible_fiber_profiles = parse_profiles(*a.fib2_profiles);
  else
    f2.profiles_known = false;
  if (a.fib2_mw_rank) f2.mw_rank_hint = parse_integer(*a.fib2_mw_rank);
  f2.mw_positive_asserted = a.fib2_mw_positive;
  const auto rep = check_nonarithmetic(parse_rank(a.rho, "--rho"), f1, f2, a.has_minus2);

  std::ostringstream t;
  t << "verdict: " << to_string(rep.verdict) << "\n";
  Json hs = Json::array();
  for (const auto& h : rep.checked_hypotheses) {
    t << h.name << ": " << (h.passed ? "pass" : "FAIL") << " (" << h.detail << ")\n";
    hs.push_back({{"name", h.name}, {"passed", h.passed}, {"detail", h.detail}});
  }
  t << rep.explanation << "\n";
  Json j;
  j["verdict"] = to_string(rep.verdict);
  j["hypotheses"] = hs;
  j["explanation"] = rep.explanation;
  emit(g, j, t.str());
  return kOk;
}

// ---- example -------------------------------------------------------------

int cmd_example(const Globals& g, const std::string& name, bool verify, bool list) {
  if (list || name.empty()) {
    Json j = example_names();
    std::string text;
    for (const auto& n : example_names()) text += n + "\n";
    emit(g, j, text);
    return kOk;
  }
  const ExampleEntry ex = example_registry(name);
  const auto& L = ex.model.space();
  LatticeDescriptor d{L, ex.model.lattice.marking(), ex.model.canonical};
  std::ostringstream t;
  t << ex.name << ": " << ex.description << "\n"
    << "kind: " << to_string(ex.model.kind) << "\n"
    << "rank: " << L.rank() << "\n"
    << "signature: " << to_string(signature(L)) << "\n"
    << "marking: " << to_string(ex.model.lattice.marking()) << "\n";
  if (!ex.named_classes.empty()) t << "named classes: " << joined(ex.named_classes) << "\n";
  Json j;
  j["name"] = ex.name;
  j["description"] = ex.description;
  j["kind"] = to_string(ex.model.kind);
  j["descriptor"] = descriptor_to_json(d);
  j["named_classes"] = vectors_json(ex.named_classes);
  int code = kOk;
  if (verify) {
    Json checks = Json::array();
    for (const auto& c : verify_example(name)) {
      t << c.label << ": " << c.actual << " " << (c.passed ? "✓" : "✗");
      if (!c.passed) t << " (expected " << c.expected << ")";
      t << "\n";
      checks.push_back({{"label", c.label}, {"expected", c.expected}, {"actual", c.actual}, {"passed", c.passed}});
      if (!c.passed) code = kMismatch;
    }
    j["checks"] = checks;
    j["verified"] = code == kOk;
  }
  emit(g, j, t.str());
  return code;
}

// ---- render --------------------------------------------------------------

int cmd_render(const Globals& g, const std::string& file, const std::string& degree_text, const std::string& out) {
  const auto d = read_descriptor_file(file);
  const MarkedLattice M = d.marked();
  const Integer max_degree = parse_integer(degree_text);
  if (max_degree < 1) throw InputError("--max-degree must be at least 1");
  const DiskScene scene = build_chamber_scene(M, max_degree);
  render_scene(scene, out);
  std::ostringstream t;
  t << "wrote " << out << " (" << scene.walls.size() << " walls, " << scene.rays.size() << " points)\n";
  Json j;
  j["out"] = out;
  j["walls"] = scene.walls.size();
  j["points"] = scene.rays.size();
  emit(g, j, t.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conewalk: hyperbolic lattices, chambers, cones and isometries"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Print JSON instead of text");

  std::string file, norm_text, degree_text = "12", vector_text, policy = "most-negative", gens, matrix, rho,
                                   profiles, name, out;
  bool primitive = false, verify = false, list = false;
  std::vector<std::string> constraints;
  NonarithArgs na;

  auto* info = app.add_subcommand("info", "Rank, signature, determinant and parity of a lattice");
  info->add_option("file", file, "Lattice descriptor (JSON)")->required();

  auto* classes = app.add_subcommand("classes", "Enumerate classes of given norm up to a degree bound");
  classes->add_option("file", file, "Lattice descriptor with marking")->required();
  classes->add_option("--norm", norm_text, "Target norm v^2")->required();
  classes->add_option("--max-degree", degree_text, "Bound on <v,H>")->required();
  classes->add_flag("--primitive", primitive, "Only primitive classes");
  classes->add_option("--constraint", constraints, "Extra condition vec=val meaning <v,vec> = val");

  auto* walk = app.add_subcommand("walk", "Reflect a positive class into the chamber of the marking");
  walk->add_option("file", file, "Lattice descriptor with marking")->required();
  walk->add_option("--vector", vector_text, "Class in the positive cone, e.g. 3,1,1")->required();
  walk->add_option("--max-degree", degree_text, "Roots up to this degree are used")->required();
  walk->add_option("--policy", policy, "most-negative (default) or first");

  auto* dual = app.add_subcommand("dual", "Dual cone under the lattice pairing");
  dual->add_option("file", file, "Lattice descriptor")->required();
  dual->add_option("--generators", gens, "Generators: (1,0),(1,-1) or 1,0;1,-1")->required();

  auto* rays = app.add_subcommand("rays", "Extremal rays of a finitely generated cone");
  rays->add_option("file", file, "Lattice descriptor")->required();
  rays->add_option("--generators", gens, "Generators: (1,0),(1,-1) or 1,0;1,-1")->required();

  auto* cls = app.add_subcommand("classify", "Elliptic / parabolic / hyperbolic type of an isometry");
  cls->add_option("file", file, "Lattice descriptor with marking")->required();
  cls->add_option("--matrix", matrix, "Rows separated by ';', entries by ','")->required();

  auto* mw = app.add_subcommand("mw-rank", "Mordell-Weil rank by Shioda-Tate");
  mw->add_option("--rho", rho, "Picard rank")->required();
  mw->add_option("--profiles", profiles, "Component counts of reducible fibers, e.g. 2,3");

  auto* nonarith = app.add_subcommand("nonarith", "Check the hypotheses of the non-arithmeticity criterion");
  nonarith->add_option("--rho", na.rho, "Picard rank")->required();
  nonarith->add_flag("--fib1-irreducible", na.fib1_irreducible, "First fibration has only irreducible fibers");
  nonarith->add_option("--fib1-profiles", na.fib1_profiles, "Reducible fibers of the first fibration");
  nonarith->add_flag("--fib2-mw-positive", na.fib2_mw_positive, "Second fibration has positive Mordell-Weil rank");
  nonarith->add_option("--fib2-profiles", na.fib2_profiles, "Reducible fibers of the second fibration");
  nonarith->add_option("--fib2-mw-rank", na.fib2_mw_rank, "Known Mordell-Weil rank of the second fibration");
  nonarith->add_flag("--has-minus2", na.has_minus2, "The surface contains a (-2)-curve");

  auto* example = app.add_subcommand("example", "Show or verify a built-in example");
  example->add_option("name", name, "Example name");
  example->add_flag("--verify", verify, "Run the example's expected-value checks");
  example->add_flag("--list", list, "List example names");

  auto* render = app.add_subcommand("render", "Draw the chamber of a rank-3 lattice as SVG");
  render->add_option("file", file, "Lattice descriptor with marking")->required();
  render->add_option("--max-degree", degree_text, "Roots up to this degree are drawn")->required();
  render->add_option("--out", out, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*info) return cmd_info(g, file);
    if (*classes) return cmd_classes(g, file, norm_text, degree_text, primitive, constraints);
    if (*walk) return cmd_walk(g, file, vector_text, degree_text, policy);
    if (*dual) return cmd_dual(g, file, gens);
    if (*rays) return cmd_rays(g, file, gens);
    if (*cls) return cmd_classify(g, file, matrix);
    if (*mw) return cmd_mw_rank(g, rho, profiles);
    if (*nonarith) return cmd_nonarith(g, na);
    if (*example) return cmd_example(g, name, verify, list);
    if (*render) return cmd_render(g, file, degree_text, out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

#pragma once

#include <conewalk/arithmetic.hpp>
#include <conewalk/cones.hpp>
#include <conewalk/enumeration.hpp>
#include <conewalk/errors.hpp>
#include <conewalk/lattice.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace conewalk {

struct DiskPoint {
  double x = 0;
  double y = 0;
  double norm() const { return std::hypot(x, y); }
};

/// Orthogonal frame b0 = H, b1, b2 of a rank-3 hyperbolic lattice, found by
/// exact Gram-Schmidt. In the scaled coordinates c_i = <x,b_i>/sqrt|b_i^2|
/// the form reads c0^2 - c1^2 - c2^2.
class DiskFrame {
 public:
  explicit DiskFrame(const MarkedLattice& M) : space_(M.space()) {
    if (space_.rank() != 3) throw UnsupportedError("disk projection is only defined for rank 3");
    std::vector<std::vector<Rational>> basis;
    std::vector<Rational> norms;
    auto pair = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
      Rational s = 0;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) s += a[i] * Rational(space_.entry(i, j)) * b[j];
      return s;
    };
    std::vector<Rational> h(3);
    for (std::size_t i = 0; i < 3; ++i) h[i] = Rational(M.marking()[i]);
    basis.push_back(h);
    norms.push_back(pair(h, h));
    for (std::size_t e = 0; e < 3 && basis.size() < 3; ++e) {
      std::vector<Rational> v(3, Rational(0));
      v[e] = 1;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const Rational c = pair(v, basis[k]) / norms[k];
        for (std::size_t i = 0; i < 3; ++i) v[i] -= c * basis[k][i];
      }
      const Rational n = pair(v, v);
      if (n == 0) continue;  // v was in the span already (H^perp is definite)
      basis.push_back(v);
      norms.push_back(n);
    }
    for (std::size_t k = 0; k < 3; ++k) {
      // Row k of the functional x -> <x, b_k> as exact rationals.
      for (std::size_t j = 0; j < 3; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < 3; ++i) s += basis[k][i] * Rational(space_.entry(i, j));
        functional_[k][j] = s;
      }
      scale_[k] = 1.0 / std::sqrt(std::abs(to_double(norms[k])));
    }
  }

  /// Scaled frame coordinates (c0, c1, c2); the pairing is evaluated exactly.
  std::array<double, 3> coordinates(const LatticeVector& x) const {
    std::array<double, 3> c{};
    for (std::size_t k = 0; k < 3; ++k) {
      Rational s = 0;
      for (std::size_t j = 0; j < 3; ++j) s += functional_[k][j] * Rational(x[j]);
      c[k] = to_double(s) * scale_[k];
    }
    return c;
  }

  const LatticeSpace& space() const { return space_; }

 private:
  LatticeSpace space_;
  std::array<std::array<Rational, 3>, 3> functional_;
  std::array<double, 3> scale_{};
};

/// Poincare disk image of a ray of the closed positive cone, with H at the
/// centre: (c1, c2) / (c0 + sqrt(x^2)).
inline DiskPoint disk_point(const DiskFrame& frame, const MarkedLattice& M, const LatticeVector& x) {
  require_length(M.space(), x);
  if (x.is_zero()) throw InputError("the zero vector has no disk image");
  if (!in_positive_cone(M, x, false))
    throw InputError("class " + to_string(x) + " is outside the closed positive cone");
  const auto c = frame.coordinates(x);
  const Integer n = norm(M.space(), x);
  const double denom = c[0] + std::sqrt(to_double(n));
  return {c[1] / denom, c[2] / denom};
}

inline DiskPoint disk_point(const MarkedLattice& M, const LatticeVector& x) {
  return disk_point(DiskFrame(M), M, x);
}

/// The geodesic {<x,r> = 0} for a class r of negative norm, as a circle
/// orthogonal to the unit circle (or a diameter when r is orthogonal to H).
struct Geodesic {
  DiskPoint start, end;  // ideal endpoints
  bool straight = false;
  DiskPoint center;
  double radius = 0;
};

inline Geodesic wall_geodesic(const DiskFrame& frame, const LatticeVector& r) {
  const auto rho = frame.coordinates(r);
  // On the boundary (c0, c1, c2) = (1, cos t, sin t): rho0 = R cos(t - phi).
  const double big_r = std::hypot(rho[1], rho[2]);
  const double phi = std::atan2(rho[2], rho[1]);
  const double alpha = std::acos(std::clamp(rho[0] / big_r, -1.0, 1.0));
  Geodesic g;
  g.start = {std::cos(phi - alpha), std::sin(phi - alpha)};
  g.end = {std::cos(phi + alpha), std::sin(phi + alpha)};
  const double ca = std::cos(alpha);
  if (std::abs(ca) < 1e-12) {
    g.straight = true;
    return g;
  }
  g.center = {std::cos(phi) / ca, std::sin(phi) / ca};
  g.radius = std::abs(std::tan(alpha));
  return g;
}

struct DiskScene {
  struct Wall {
    LatticeVector root;
    Geodesic geodesic;
    bool chamber_facet = false;
  };
  struct Ray {
    std::string label;
    std::string kind;  // marking, isotropic, vertex, foot
    LatticeVector vector;
    DiskPoint point;
    std::optional<LatticeVector> orthogonal_to;
  };
  std::vector<Wall> walls;
  std::vector<Ray> rays;
  std::optional<std::vector<DiskPoint>> chamber_hint;
  std::string title;
};

/// Walls of every root of degree <= max_degree, the marking, nef isotropic
/// classes of degree <= max_degree, chamber vertices in the closed positive
/// cone, and for each root the foot 2H + <H,r>r of the perpendicular from H.
inline DiskScene build_chamber_scene(const MarkedLattice& M, const Integer& max_degree) {
  const DiskFrame frame(M);
  const LatticeSpace& L = M.space();
  DiskScene scene;
  scene.title = "chamber of " + to_string(M.marking()) + ", roots of degree <= " + max_degree.str();
  const RootSet rs = root_set(M, max_degree);
  std::vector<LatticeVector> all = rs.roots;
  all.insert(all.end(), rs.walls_through_marking.begin(), rs.walls_through_marking.end());

  std::vector<LatticeVector> facets;
  std::optional<RationalCone> chamber;
  if (!rs.roots.empty()) {
    const RationalCone root_cone(L, rs.roots);
    facets = extremal_rays(root_cone).rays;
    chamber = dual_cone(root_cone);
  }
  for (const auto& r : all) {
    const bool facet = std::find(facets.begin(), facets.end(), r) != facets.end();
    scene.walls.push_back({r, wall_geodesic(frame, r), facet});
  }

  scene.rays.push_back({"H", "marking", M.marking(), disk_point(frame, M, M.marking()), std::nullopt});
  for (const auto& v : classes_of_norm(M, {Integer(0), max_degree, true, {}})) {
    if (!is_nef_against(v, rs.roots, L)) continue;
    scene.rays.push_back({to_string(v), "isotropic", v, disk_point(frame, M, v), std::nullopt});
  }
  if (chamber && chamber->lineality().empty()) {
    std::vector<DiskPoint> hint;
    bool all_inside = true;
    for (const auto& v : chamber->generators()) {
      if (!in_positive_cone(M, v, false)) {
        all_inside = false;
        continue;
      }
      const DiskPoint p = disk_point(frame, M, v);
      hint.push_back(p);
      if (norm(L, v) != 0) scene.rays.push_back({to_string(v), "vertex", v, p, std::nullopt});
    }
    if (all_inside && hint.size() >= 3) {
      std::sort(hint.begin(), hint.end(), [](const DiskPoint& a, const DiskPoint& b) {
        return std::atan2(a.y, a.x) < std::atan2(b.y, b.x);
      });
      scene.chamber_hint = hint;
    }
  }
  for (const auto& r : all) {
    LatticeVector foot = Integer(2) * M.marking() + M.degree(r) * r;
    if (!foot.is_zero()) foot = foot.primitive();
    scene.rays.push_back({"foot " + to_string(r), "foot", foot, disk_point(frame, M, foot), r});
  }
  return scene;
}

namespace detail {

inline std::string fmt(double v) {
  if (std::abs(v) < 5e-13) v = 0;  // avoid "-0.000000000000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Static SVG 1.1 for a scene. The y axis is flipped so the picture has the
/// usual orientation; numbers are fixed-point so output is reproducible.
inline std::string svg_document(const DiskScene& scene) {
  using detail::fmt;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.05 -1.05 2.1 2.1\" "
        "width=\"600\" height=\"600\">\n";
  if (!scene.title.empty()) os << "<title>" << detail::xml_escape(scene.title) << "</title>\n";
  os << "<circle class=\"boundary\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" "
        "stroke-width=\"0.004\"/>\n";
  if (scene.chamber_hint) {
    os << "<polygon class=\"chamber\" fill=\"#dde8f5\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < scene.chamber_hint->size(); ++i) {
      const auto& p = (*scene.chamber_hint)[i];
      os << (i ? " " : "") << fmt(p.x) << "," << fmt(-p.y);
    }
    os << "\"/>\n";
  }
  for (const auto& w : scene.walls) {
    const auto& g = w.geodesic;
    os << "<path class=\"wall" << (w.chamber_facet ? " facet" : "") << "\" data-root=\"" << to_string(w.root)
       << "\" fill=\"none\" stroke=\"" << (w.chamber_facet ? "#b03030" : "#808080")
       << "\" stroke-width=\"0.006\" d=\"M " << fmt(g.start.x) << " " << fmt(-g.start.y);
    if (g.straight) {
      os << " L " << fmt(g.end.x) << " " << fmt(-g.end.y);
    } else {
      // Minor arc from start to end, bulging towards the centre of the disk.
      const double cross = (g.start.x - g.center.x) * (g.end.y - g.center.y) -
                           (g.start.y - g.center.y) * (g.end.x - g.center.x);
      const int sweep = cross > 0 ? 0 : 1;  // y is flipped on output
      os << " A " << fmt(g.radius) << " " << fmt(g.radius) << " 0 0 " << sweep << " " << fmt(g.end.x) << " "
         << fmt(-g.end.y);
    }
    os << "\"/>\n";
  }
  for (const auto& r : scene.rays) {
    const char* color = r.kind == "marking"     ? "#000000"
                        : r.kind == "isotropic" ? "#1060c0"
                        : r.kind == "vertex"    ? "#207020"
                                                : "#c07000";
    os << "<circle class=\"ray " << r.kind << "\" data-label=\"" << detail::xml_escape(r.label)
       << "\" data-vector=\"" << to_string(r.vector) << "\"";
    if (r.orthogonal_to) os << " data-orthogonal-to=\"" << to_string(*r.orthogonal_to) << "\"";
    os << " cx=\"" << fmt(r.point.x) << "\" cy=\"" << fmt(-r.point.y) << "\" r=\"0.012\" fill=\"" << color
       << "\"/>\n";
    if (r.kind == "marking" || r.kind == "isotropic")
      os << "<text x=\"" << fmt(r.point.x * 0.9) << "\" y=\"" << fmt(-r.point.y * 0.9 - 0.03)
         << "\" font-size=\"0.05\" text-anchor=\"middle\">" << detail::xml_escape(r.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline void render_scene(const DiskScene& scene, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << svg_document(scene);
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace conewalk

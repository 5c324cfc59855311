// Classifies a product of two reflections on the rank-3 K3 lattice, walks
// images of the marking back to it and draws the chamber.

#include <conewalk/cones.hpp>
#include <conewalk/hyperviz.hpp>
#include <conewalk/isometry.hpp>
#include <conewalk/surfaces.hpp>

#include <iostream>

using namespace conewalk;

int main(int argc, char** argv) {
  const ExampleEntry ex = example_registry("k3_rank3");
  const MarkedLattice& M = ex.model.lattice;
  const LatticeSpace& L = M.space();
  std::cout << ex.description << "\n";

  const auto g = compose(reflection_isometry(L, {4, 2, -1}), reflection_isometry(L, {0, 0, 1}));
  const auto kind = classify(M, g);
  std::cout << "g = s_(4,2,-1) s_(0,0,1): " << to_string(kind.type);
  if (kind.certificate) std::cout << ", stretch factor is a root of " << to_string(*kind.certificate);
  std::cout << "\n";

  // g^k(H) lies in another chamber; walking it back must return H.
  LatticeVector x = M.marking();
  for (int k = 1; k <= 2; ++k) {
    x = g(x);
    const Integer bound = separating_root_degree_bound(M, x);
    const auto walk = chamber_walk(M, root_set(M, bound).roots, x);
    std::cout << "g^" << k << "(H) = " << to_string(x) << " -> " << to_string(walk.image) << " in " << walk.length()
              << " reflections, roots up to degree " << bound << "\n";
  }

  const std::string out = argc > 1 ? argv[1] : "k3_chamber.svg";
  render_scene(build_chamber_scene(M, 12), out);
  std::cout << "wrote " << out << "\n";
}

#pragma once

#include <string>
#include <vector>

#include "cvk/polytope.hpp"

namespace cvk {

// Right-angled regular pentagon in the Klein model of H^2.
MirrorPolytope right_angled_pentagon();
// The pentagon with one side removed: three right angles and one
// loxodromic vertex where sides 1 and 4 meet beyond the circle.
MirrorPolytope loxodromic_quadrilateral();
// Triangular prism: quadrilateral faces 1, 2, 3 pairwise at pi/3, triangles
// 4 and 5 disjoint; facets 1, 3, 5 meet in a parabolic vertex while the
// subsystem {1, 2, 3} is affine of type ~A_2 without being a vertex group.
MirrorPolytope parabolic_prism();
// Cartan matrix of the (3,3,4) triangle with a12 = -t, a21 = -1/t; not
// symmetrizable unless t = 1.
MirrorPolytope deformed_triangle(double t);

// Named fixtures for the command line: tits-<p>-<q>-<r> (r may be "inf"),
// tits-A_3 (any catalog name), pentagon, quadrilateral, prism, deformed-334, cone-237.
MirrorPolytope named_fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace cvk

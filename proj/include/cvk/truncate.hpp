#pragma once

#include <vector>

#include "cvk/config.hpp"
#include "cvk/polytope.hpp"

namespace cvk {

// |S_p| = d.
bool is_simple_vertex(const MirrorPolytope& p, int vertex);

struct TruncationPlan {
  int vertex = 0;
  Subset facets;  // S_p
  Vec covector;   // new facet, scaled so that it is 2 on the vertex ray
  Vec polar;      // unit vertex ray
};

// Checks that p is a simple vertex with loxodromic perfect link and that the
// hyperplane through the polars v_s, s in S_p, cuts P cleanly: it separates p
// from every other vertex and meets each ridge through p in its relative
// interior. Throws NotAVertex, NotSimple, NotLoxodromic, LinkNotPerfect,
// NotTruncable or ConeException.
TruncationPlan truncability(const MirrorPolytope& p, int vertex, const Tolerances& tol = {});

// Adds the plan's facet; the new ridges are right angles and the new facet
// is a copy of the link. Throws PostconditionFailed otherwise.
MirrorPolytope truncate_vertex(const MirrorPolytope& p, const TruncationPlan& plan, const Tolerances& tol = {});

struct TruncationResult {
  MirrorPolytope polytope;
  std::vector<TruncationPlan> plans;
  std::vector<int> new_facets;  // indices in the result
};

// Truncates every loxodromic vertex at once. Each must be simple with a
// perfect link. The result is quasi-perfect.
TruncationResult truncate_all(const MirrorPolytope& p, const Tolerances& tol = {});

}  // namespace cvk

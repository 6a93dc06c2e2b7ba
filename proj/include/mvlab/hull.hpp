#pragma once

// Exact facet enumeration for full-dimensional point sets. These routines
// are the engines behind Polytope construction; most callers want
// Polytope::from_points instead.

#include "mvlab/linalg.hpp"

#include <cstddef>
#include <vector>

namespace mvlab::hull {

struct HullFacet {
  IntVector normal;  // primitive outer normal
  Rational offset;   // facet lies in {x : <normal, x> = offset}
  std::vector<std::size_t> vertices;  // indices into the input points, extreme points only
};

struct HullResult {
  std::vector<std::size_t> vertices;  // indices of extreme input points, increasing
  std::vector<HullFacet> facets;
};

/// Double description (Motzkin) on the homogenized cone
/// {(a, b) : <a, p> <= b for all input p}; its extreme rays are the facets.
/// Input points must be distinct and affinely span R^d, d >= 1.
/// Throws Error(DegenerateInput) when they do not.
HullResult double_description(const std::vector<Vector>& points);

/// Andrew's monotone chain with exact orientation tests; d == 2 only.
/// Collinear boundary points are not reported as vertices.
HullResult monotone_chain(const std::vector<Vector>& points);

}  // namespace mvlab::hull

#pragma once

// Named polytope families. Spec strings look like "cube:3",
// "regular_polygon:64,10^6" or "truncated_simplex:3,1/4".

#include "mvlab/polytope.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mvlab::cli {

Polytope simplex(std::size_t n);
Polytope cube(std::size_t n);
Polytope cross_polytope(std::size_t n);
/// standard simplex of dimension n-1 times [0, h]
Polytope prism(std::size_t n, const Rational& h);
/// Hull of m integer points in [-6, 6]^n; redrawn until full-dimensional.
Polytope random_hull(std::size_t n, std::size_t m, std::uint64_t seed);
/// Vertices rounded from (cos 2pi k/m, sin 2pi k/m) with denominators <= max_den.
Polytope regular_polygon(std::size_t m, const Integer& max_den);
/// Octahedron, subdivided `subdivisions` times and pushed onto the unit sphere.
Polytope ball_approx_3d(std::size_t subdivisions, const Integer& max_den);
/// Standard n-simplex with the corner at the origin cut off at depth eps, 0 < eps < 1.
Polytope truncated_simplex(std::size_t n, const Rational& eps);

/// Kinds: the functions above plus "segment:v1,...,vn" for [0, v].
/// Throws Error(BadParams) on an unknown kind or malformed parameters.
Polytope generate(std::string_view kind, const std::vector<std::string>& params);
Polytope generate(std::string_view spec);

}  // namespace mvlab::cli

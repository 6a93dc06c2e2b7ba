#pragma once

// Exact rational convex polytopes.
//
// Directions are carried as primitive integer vectors z rather than unit
// vectors u = z/|z|. Quantities that would be irrational under unit
// normalization are stored in "denominator-cleared" form:
//   support_value(P, z)      = |z| * h_P(u)
//   FacetData::offset        = |z| * h_P(u)
//   FacetData::normalized_volume = Vol_{n-1}(facet) / |z|
// so that offset * normalized_volume = h_P(u) * Vol_{n-1}(facet) exactly.

#include "mvlab/hull.hpp"
#include "mvlab/linalg.hpp"

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

namespace mvlab {

/// Hard cap on the ambient dimension of full-dimensional work. The
/// MVLAB_DIM_LIMIT environment variable may lower it, never raise it.
inline constexpr std::size_t kMaxDimension = 4;
std::size_t dimension_limit();
void check_dimension_limit(std::size_t dim);

/// Nonzero integer vector with coprime entries.
class PrimitiveNormal {
 public:
  /// Any nonzero integer vector; it is divided by the gcd of its entries.
  explicit PrimitiveNormal(IntVector coords);
  /// Positive rescaling of a nonzero rational direction.
  static PrimitiveNormal from_direction(const Vector& direction);

  const IntVector& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer norm_squared() const;
  Vector as_vector() const { return to_rational(coords_); }
  PrimitiveNormal operator-() const;

  friend bool operator==(const PrimitiveNormal& a, const PrimitiveNormal& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const PrimitiveNormal& a, const PrimitiveNormal& b) { return a.coords_ < b.coords_; }

 private:
  IntVector coords_;
};

struct FacetData {
  PrimitiveNormal normal;
  Rational offset;                    // facet lies in {<x, normal> = offset}
  std::vector<std::size_t> vertices;  // indices into the parent's vertex list
  Rational normalized_volume;         // Vol_{n-1}(facet) / |normal|
};

enum class Sense { LessEqual, GreaterEqual };

struct Halfspace {
  PrimitiveNormal normal;
  Rational bound;
  Sense sense = Sense::LessEqual;

  /// {<x, normal> <= bound} or {>= bound} for an arbitrary nonzero rational
  /// normal; the bound is rescaled along with the normal.
  static Halfspace make(const Vector& normal, const Rational& bound, Sense sense = Sense::LessEqual);

  bool contains(const Vector& x) const;
  Halfspace complement_closure() const;  // same hyperplane, opposite side
  Halfspace as_less_equal() const;
};

/// Convex hull of finitely many rational points, stored by its extreme
/// points in lexicographic order. Values are immutable; the facet structure
/// and volume are computed once on demand and shared between copies.
class Polytope {
 public:
  /// The empty polytope in R^0.
  Polytope();

  /// Hull of `points` (each of length `ambient_dim`) of any affine dimension.
  /// An empty point list yields the empty polytope.
  static Polytope from_points(std::vector<Vector> points, std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_dim_; }
  /// Dimension of the affine hull; -1 for the empty polytope.
  int affine_dim() const { return affine_dim_; }
  bool empty() const { return affine_dim_ < 0; }
  bool full_dimensional() const { return !empty() && static_cast<std::size_t>(affine_dim_) == ambient_dim_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Vector>& vertices() const { return vertices_; }

  /// Facets of a full-dimensional polytope; throws Error(DegenerateInput) otherwise.
  const std::vector<FacetData>& facets() const;
  const Rational& cached_volume() const;

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.vertices_ == b.vertices_;
  }

 private:
  struct Cache;

  std::size_t ambient_dim_ = 0;
  int affine_dim_ = -1;
  std::vector<Vector> vertices_;
  std::shared_ptr<Cache> cache_;
};

/// Hull of points spanning R^dim. Throws Error(DegenerateInput) if the
/// points are affinely dependent (use Polytope::from_points for flats).
Polytope convex_hull(const std::vector<Vector>& points, std::size_t dim);

/// Bounded intersection of halfspaces, by brute force over all dim-subsets of
/// bounding hyperplanes. Throws Error(Unbounded), Error(Empty), or
/// Error(BadParams) when more than kMaxEnumerationHalfspaces are given.
inline constexpr std::size_t kMaxEnumerationHalfspaces = 128;
Polytope vertex_enumeration(const std::vector<Halfspace>& halfspaces, std::size_t dim);

const std::vector<FacetData>& facet_structure(const Polytope& p);

/// max <x, z> over P (the support function at the integer vector z).
Rational support_value(const Polytope& p, const IntVector& z);
Rational support_value(const Polytope& p, const PrimitiveNormal& z);

/// The face P ∩ {<x, z> = support_value(P, z)}.
Polytope face_in_direction(const Polytope& p, const PrimitiveNormal& z);

Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope scale(const Polytope& p, const Rational& factor);
Polytope translate(const Polytope& p, const Vector& offset);
Polytope segment(const Vector& a, const Vector& b);

/// n-dimensional volume; zero for lower-dimensional polytopes.
Rational volume(const Polytope& p);

Polytope clip_halfspace(const Polytope& p, const Halfspace& h);

/// Linear image dropping coordinate k; ambient dimension decreases by one.
Polytope drop_coordinate(const Polytope& p, std::size_t k);

struct Projection {
  Polytope polytope;         // in coordinates of the basis below, R^{n-1}
  Rational gram_correction;  // det(B^T B)
  std::size_t eliminated;    // index k of the last nonzero entry of v
};

/// Orthogonal projection onto v^⊥ in the rational basis
/// B = {e_j - (v_j / v_k) e_k : j != k}, k the last nonzero coordinate of v.
/// True (n-1)-volumes equal volume(result) * sqrt(gram_correction), and
/// gram_correction = |v|^2 / v_k^2.
Projection project_along(const Polytope& p, const Vector& v);

/// Vertex index pairs (i < j) spanning edges of a full-dimensional polytope.
std::vector<std::pair<std::size_t, std::size_t>> edges(const Polytope& p);

}  // namespace mvlab

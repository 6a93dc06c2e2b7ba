#pragma once

// Mixed volumes of rational polytopes by two independent routes:
//
//  * polarization: n! V(K_1..K_n) = sum over nonempty slot subsets S of
//    (-1)^{n-|S|} Vol(sum_{i in S} K_i);
//  * measure integration: V(L, K_1..K_{n-1}) = (1/n) sum_z h(L, z) w(z) over
//    the atoms of the mixed area measure S(K_1..K_{n-1}, .), whose weights
//    are (n-1)-dimensional mixed volumes of the faces in direction z.
//
// Measures are stored per primitive normal z with normalized weight
// w(z) = (true weight at z/|z|) / |z|, so that the pairing with
// support_value(L, z) = |z| h_L(z/|z|) is exact.

#include "mvlab/polytope.hpp"

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace mvlab {

/// n bodies in R^n, repetitions allowed.
struct BodyTuple {
  std::vector<Polytope> bodies;

  /// Multiplicity sugar: {{K, 2}, {L, 1}} -> (K, K, L).
  static BodyTuple with_multiplicities(std::initializer_list<std::pair<Polytope, std::size_t>> parts);
};

class DiscreteMeasure {
 public:
  using Atoms = std::map<PrimitiveNormal, Rational>;

  DiscreteMeasure() = default;

  /// Adds w to the atom at z; atoms whose weight becomes zero are removed.
  void add(const PrimitiveNormal& z, const Rational& w);

  const Atoms& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  Rational weight(const PrimitiveNormal& z) const;
  std::vector<PrimitiveNormal> support() const;
  Rational total() const;

  DiscreteMeasure scaled(const Rational& factor) const;
  /// Signed difference this - other (may carry negative weights).
  DiscreteMeasure minus(const DiscreteMeasure& other) const;

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  Atoms atoms_;
};

/// Polarization route. Requires bodies.size() == ambient dimension of each
/// body; throws Error(DimensionLimit) above the dimension cap.
Rational mixed_volume(std::span<const Polytope> bodies);
Rational mixed_volume(const BodyTuple& tuple);
Rational mixed_volume(std::initializer_list<Polytope> bodies);

/// Atoms at the facet normals with weight normalized_volume.
DiscreteMeasure surface_area_measure(const Polytope& p);

/// S(K_1, ..., K_{n-1}, .) for n-1 bodies in R^n.
DiscreteMeasure mixed_area_measure(std::span<const Polytope> bodies);
DiscreteMeasure mixed_area_measure(std::initializer_list<Polytope> bodies);

/// (1/n) sum_z support_value(L, z) * w(z).
Rational integrate_support(const Polytope& l, const DiscreteMeasure& measure);

/// Measure route: integrate_support(L, mixed_area_measure(bodies)).
Rational mixed_volume_via_measure(const Polytope& l, std::span<const Polytope> bodies);
Rational mixed_volume_via_measure(const Polytope& l, std::initializer_list<Polytope> bodies);

/// V([0, v], K_2, ..., K_n) = (1/n) |v| V_{n-1}(K_2|v^⊥, ..., K_n|v^⊥), with the
/// projections taken in the rational basis of project_along.
Rational segment_mixed_volume(const Vector& v, std::span<const Polytope> bodies);
Rational segment_mixed_volume(const Vector& v, std::initializer_list<Polytope> bodies);

}  // namespace mvlab

#pragma once

// Bezout-inequality diagnostics for rational polytopes.
//
// For bodies L, M and a full-dimensional polytope K in R^n the (r = 2) gap is
//   gap = V(L, K[n-1]) V(M, K[n-1]) - V(L, M, K[n-2]) V_n(K),
// nonnegative for every L, M exactly when K is a simplex (among polytopes).
//
// Facet displacements t are in denominator-cleared units: moving facet i by t
// replaces <x, z_i> <= c_i by <x, z_i> <= c_i + t, i.e. a Euclidean shift of
// t / |z_i| along the unit outer normal.

#include "mvlab/mixed_volume.hpp"
#include "mvlab/polytope.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mvlab {

enum class Route { Polarization, Measure };

struct MoveSpec {
  std::size_t facet_index = 0;
  Rational t;
};

struct MoveRange {
  Rational t_min;  // < 0
  Rational t_max;  // > 0
  bool contains(const Rational& t) const { return t_min <= t && t <= t_max; }
};

enum class Verdict { Satisfied, Violated };

struct BezoutCertificate {
  Polytope l;
  Polytope m;
  Polytope k;
  Rational gap;
  Verdict verdict = Verdict::Satisfied;
  bool equality = false;
};

// ---------------------------------------------------------------------------
// Gap evaluators

BezoutCertificate bezout_gap(const Polytope& l, const Polytope& m, const Polytope& k, Route route = Route::Measure);

/// RHS - LHS of V(K_1..K_r, D[n-r]) V_n(D)^{r-1} <= prod_i V(K_i, D[n-1]).
/// Throws Error(BadArity) unless 2 <= r <= n and bodies.size() == r.
Rational bezout_gap_general(const std::vector<Polytope>& bodies, const Polytope& delta, std::size_t r,
                            Route route = Route::Polarization);

/// Caches S(K) and V_n(K) for repeated gap evaluations against one K.
class BezoutContext {
 public:
  explicit BezoutContext(Polytope k);

  const Polytope& k() const { return k_; }
  const Rational& volume() const { return volume_; }

  /// V(L, K[n-1]) by integrating h_L against S(K).
  Rational mixed_with_k(const Polytope& l) const;
  /// S(M, K[n-2], .)
  DiscreteMeasure mixed_measure(const Polytope& m) const;

  BezoutCertificate gap(const Polytope& l, const Polytope& m) const;
  /// Same as gap(l, m) with S(M, K[n-2]) and V(M, K[n-1]) precomputed.
  BezoutCertificate gap(const Polytope& l, const Polytope& m, const DiscreteMeasure& m_measure,
                        const Rational& m_with_k) const;

 private:
  Polytope k_;
  DiscreteMeasure surface_;
  Rational volume_;
};

// ---------------------------------------------------------------------------
// Facet moves

/// Verified interval around 0 on which K_{t,i} keeps the facet normals of K.
MoveRange safe_move_range(const Polytope& k, std::size_t facet_index);

/// K_{t,i}. Throws Error(RangeViolation) outside safe_move_range.
Polytope move_facet(const Polytope& k, const MoveSpec& spec);

/// K_{t,i} without the range check; the result may lose facets or be empty.
Polytope shift_facet(const Polytope& k, std::size_t facet_index, const Rational& t);

std::vector<PrimitiveNormal> facet_normals(const Polytope& k);

// ---------------------------------------------------------------------------
// Cap cuts and the support-drop mechanism

/// K ∩ {<x, z> <= support_value(K, z) - eps}. Throws Error(EmptyOrFlat)
/// unless the result is full-dimensional, Error(BadParams) if eps <= 0.
Polytope cap_cut(const Polytope& k, const PrimitiveNormal& z, const Rational& eps);

/// project_along(M, v) == project_along(K, v).
bool projection_preserved(const Polytope& k, const Polytope& m, const Vector& v);

/// Facet normals z of K with support_value(M, z) < support_value(K, z).
std::vector<PrimitiveNormal> support_drop_set(const Polytope& k, const Polytope& m);

/// Largest extent, in direction z, of the facets of K touching the face K^z.
Rational max_facet_sagitta(const Polytope& k, const PrimitiveNormal& z);

struct StrictPointExperiment {
  PrimitiveNormal cap_direction;
  Rational depth;
  Vector v;
  Polytope cap;  // M = K_eps
  bool projection_preserved = false;
  std::vector<PrimitiveNormal> drop_set;
  Rational max_sagitta;
  bool depth_clears_sagitta = false;  // depth >= 3 * max_sagitta
  BezoutCertificate certificate;      // L = [-v, v], M = cap
  bool mechanism_active() const { return projection_preserved && !drop_set.empty(); }
};

StrictPointExperiment strict_point_experiment(const Polytope& k, const PrimitiveNormal& z, const Rational& depth,
                                              const Vector& v);

// ---------------------------------------------------------------------------
// Measure proportionality

/// lambda with a = lambda * b atom by atom over identical supports.
std::optional<Rational> measures_proportional(const DiscreteMeasure& a, const DiscreteMeasure& b);

/// lambda > 0 with P = lambda K + x, decided from the vertex sets alone.
std::optional<Rational> homothety_check(const Polytope& k, const Polytope& p);

struct MeasureIdentityReport {
  bool holds = false;
  Rational lambda;            // V(K_t, K[n-1]) / V_n(K)
  DiscreteMeasure lhs;        // S(K_t[r], K[n-1-r], .)
  DiscreteMeasure rhs;        // lambda^r S(K, .)
  DiscreteMeasure residual;   // lhs - rhs
};

MeasureIdentityReport lemma_measure_power_identity(const Polytope& k, const MoveSpec& spec, std::size_t r);

/// V(L,M,rest)^2 - V(L,L,rest) V(M,M,rest); never negative.
Rational af_spot_check(const Polytope& l, const Polytope& m, const std::vector<Polytope>& rest);

/// n V(K_{t,i}, P[n-1]) - n V(K, P[n-1]) - t w_P(z_i), evaluated by polarization.
Rational facet_move_linearity_check(const Polytope& k, const Polytope& p, std::size_t facet_index, const Rational& t);

// ---------------------------------------------------------------------------
// Audit and search

struct FacetAuditRecord {
  std::size_t facet_index = 0;
  Rational t;
  bool proportional = false;
  std::optional<Rational> lambda;
  bool confirmed = false;  // same verdict at t / 2
};

struct AuditReport {
  std::vector<FacetAuditRecord> facets;
  bool simplex = false;
  bool vertex_count_is_simplex = false;
  bool consistent() const { return simplex == vertex_count_is_simplex; }
};

AuditReport simplex_audit(const Polytope& k);

enum class SearchFamily { EdgeSegments, FacetMoves, CapCuts, Random };
std::string_view to_string(SearchFamily family);

struct SearchOutcome {
  std::optional<BezoutCertificate> certificate;  // first violation found
  std::optional<SearchFamily> family;
  std::size_t evaluations = 0;
  bool budget_exhausted() const { return !certificate.has_value(); }
};

/// Tries edge-segment pairs, facet-move pairs, cap-cut pairs, then seeded
/// random polytopes, stopping at the first negative gap or after `budget`
/// gap evaluations.
SearchOutcome counterexample_search(const Polytope& k, std::size_t budget, std::uint64_t seed = 0);

}  // namespace mvlab

#include "mvlab/bezout_lab.hpp"

#include "mvlab/error.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace mvlab {

namespace {

void require_full(const Polytope& k, const char* what) {
  if (!k.full_dimensional()) throw Error(ErrorKind::DegenerateInput, std::string(what) + " must be full-dimensional");
}

void require_same_dim(const Polytope& a, const Polytope& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "bodies live in different dimensions");
}

Rational power(const Rational& base, std::size_t e) {
  Rational r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

std::vector<Polytope> repeated(const Polytope& p, std::size_t count) { return std::vector<Polytope>(count, p); }

BezoutCertificate make_certificate(const Polytope& l, const Polytope& m, const Polytope& k, Rational gap) {
  BezoutCertificate c{l, m, k, std::move(gap), Verdict::Satisfied, false};
  c.verdict = c.gap < 0 ? Verdict::Violated : Verdict::Satisfied;
  c.equality = c.gap == 0;
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Gap evaluators

BezoutContext::BezoutContext(Polytope k) : k_(std::move(k)) {
  require_full(k_, "K");
  check_dimension_limit(k_.ambient_dim());
  if (k_.ambient_dim() < 2) throw Error(ErrorKind::BadArity, "the Bezout inequality needs n >= 2");
  surface_ = surface_area_measure(k_);
  volume_ = mvlab::volume(k_);
}

Rational BezoutContext::mixed_with_k(const Polytope& l) const {
  require_same_dim(l, k_);
  return integrate_support(l, surface_);
}

DiscreteMeasure BezoutContext::mixed_measure(const Polytope& m) const {
  require_same_dim(m, k_);
  std::vector<Polytope> bodies{m};
  for (std::size_t i = 0; i + 2 < k_.ambient_dim(); ++i) bodies.push_back(k_);
  return mixed_area_measure(std::span<const Polytope>(bodies));
}

BezoutCertificate BezoutContext::gap(const Polytope& l, const Polytope& m) const {
  return gap(l, m, mixed_measure(m), mixed_with_k(m));
}

BezoutCertificate BezoutContext::gap(const Polytope& l, const Polytope& m, const DiscreteMeasure& m_measure,
                                     const Rational& m_with_k) const {
  require_same_dim(l, k_);
  const Rational lmk = integrate_support(l, m_measure);
  return make_certificate(l, m, k_, mixed_with_k(l) * m_with_k - lmk * volume_);
}

BezoutCertificate bezout_gap(const Polytope& l, const Polytope& m, const Polytope& k, Route route) {
  require_same_dim(l, k);
  require_same_dim(m, k);
  if (route == Route::Measure) return BezoutContext(k).gap(l, m);

  require_full(k, "K");
  const std::size_t n = k.ambient_dim();
  if (n < 2) throw Error(ErrorKind::BadArity, "the Bezout inequality needs n >= 2");
  auto with = [&](std::vector<Polytope> front, std::size_t k_copies) {
    for (std::size_t i = 0; i < k_copies; ++i) front.push_back(k);
    return mixed_volume(std::span<const Polytope>(front));
  };
  const Rational gap = with({l}, n - 1) * with({m}, n - 1) - with({l, m}, n - 2) * volume(k);
  return make_certificate(l, m, k, gap);
}

Rational bezout_gap_general(const std::vector<Polytope>& bodies, const Polytope& delta, std::size_t r, Route route) {
  const std::size_t n = delta.ambient_dim();
  if (r < 2 || r > n) throw Error(ErrorKind::BadArity, "r must satisfy 2 <= r <= n");
  if (bodies.size() != r) throw Error(ErrorKind::BadArity, "expected exactly r bodies");
  require_full(delta, "Delta");
  for (const auto& b : bodies) require_same_dim(b, delta);

  std::vector<Polytope> tuple = bodies;
  for (std::size_t i = r; i < n; ++i) tuple.push_back(delta);
  Rational mixed;
  if (route == Route::Polarization) {
    mixed = mixed_volume(std::span<const Polytope>(tuple));
  } else {
    mixed = mixed_volume_via_measure(tuple.front(), std::span<const Polytope>(tuple).subspan(1));
  }
  const Rational lhs = mixed * power(volume(delta), r - 1);

  Rational rhs = 1;
  const DiscreteMeasure surface = surface_area_measure(delta);
  for (const auto& b : bodies) {
    if (route == Route::Measure) {
      rhs *= integrate_support(b, surface);
    } else {
      std::vector<Polytope> t{b};
      for (std::size_t i = 1; i < n; ++i) t.push_back(delta);
      rhs *= mixed_volume(std::span<const Polytope>(t));
    }
  }
  return rhs - lhs;
}

// ---------------------------------------------------------------------------
// Facet moves

std::vector<PrimitiveNormal> facet_normals(const Polytope& k) {
  std::vector<PrimitiveNormal> out;
  for (const auto& f : k.facets()) out.push_back(f.normal);
  return out;
}

Polytope shift_facet(const Polytope& k, std::size_t facet_index, const Rational& t) {
  const auto& fs = k.facets();
  if (facet_index >= fs.size()) throw Error(ErrorKind::BadParams, "facet index out of range");
  std::vector<Halfspace> hs;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    hs.push_back(Halfspace{fs[j].normal, j == facet_index ? fs[j].offset + t : fs[j].offset, Sense::LessEqual});
  }
  return vertex_enumeration(hs, k.ambient_dim());
}

namespace {

bool keeps_normals(const Polytope& k, std::size_t facet_index, const Rational& t) {
  try {
    const Polytope moved = shift_facet(k, facet_index, t);
    return moved.full_dimensional() && facet_normals(moved) == facet_normals(k);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

MoveRange safe_move_range(const Polytope& k, std::size_t facet_index) {
  require_full(k, "K");
  const auto& fs = k.facets();
  if (facet_index >= fs.size()) throw Error(ErrorKind::BadParams, "facet index out of range");
  const std::size_t n = k.ambient_dim();
  const auto& moving = fs[facet_index];

  // Every vertex of K on the moving facet travels along the lines
  // {<x, z_j> = c_j, j in S} for (n-1)-subsets S of its other facets. The
  // first parameter at which such a track meets another facet hyperplane
  // bounds the interval on which the combinatorics cannot change.
  std::vector<std::vector<std::size_t>> incident(k.vertex_count());
  for (std::size_t j = 0; j < fs.size(); ++j) {
    for (auto v : fs[j].vertices) incident[v].push_back(j);
  }
  std::optional<Rational> pos_event, neg_event;
  for (auto v : moving.vertices) {
    std::vector<std::size_t> others;
    for (auto j : incident[v]) {
      if (j != facet_index) others.push_back(j);
    }
    const std::size_t need = n - 1;
    if (others.size() < need) continue;
    std::vector<std::size_t> pick(need);
    for (std::size_t i = 0; i < need; ++i) pick[i] = i;
    while (true) {
      Matrix a;
      Vector rhs_dir(n);
      for (auto s : pick) a.push_back(fs[others[s]].normal.as_vector());
      a.push_back(moving.normal.as_vector());
      rhs_dir[n - 1] = 1;
      if (auto dir = solve(a, rhs_dir)) {
        const Vector& x0 = k.vertices()[v];
        for (std::size_t j = 0; j < fs.size(); ++j) {
          if (j == facet_index) continue;
          const Rational rate = dot(fs[j].normal.coords(), *dir);
          if (rate == 0) continue;
          const Rational t = (fs[j].offset - dot(fs[j].normal.coords(), x0)) / rate;
          if (t > 0 && (!pos_event || t < *pos_event)) pos_event = t;
          if (t < 0 && (!neg_event || t > *neg_event)) neg_event = t;
        }
      }
      std::size_t p = need;
      while (p > 0 && pick[p - 1] == others.size() - need + p - 1) --p;
      if (p == 0) break;
      --p;
      ++pick[p];
      for (std::size_t q = p + 1; q < need; ++q) pick[q] = pick[q - 1] + 1;
    }
  }

  const Rational width = support_value(k, moving.normal) + support_value(k, -moving.normal);
  MoveRange range{neg_event ? Rational(*neg_event / 2) : Rational(-width / 2),
                  pos_event ? Rational(*pos_event / 2) : width};
  for (int attempt = 0; attempt < 64 && !keeps_normals(k, facet_index, range.t_max); ++attempt) range.t_max /= 2;
  for (int attempt = 0; attempt < 64 && !keeps_normals(k, facet_index, range.t_min); ++attempt) range.t_min /= 2;
  return range;
}

Polytope move_facet(const Polytope& k, const MoveSpec& spec) {
  const MoveRange range = safe_move_range(k, spec.facet_index);
  if (!range.contains(spec.t)) {
    throw Error(ErrorKind::RangeViolation, "t = " + to_string(spec.t) + " outside [" + to_string(range.t_min) + ", " +
                                               to_string(range.t_max) + "]");
  }
  return shift_facet(k, spec.facet_index, spec.t);
}

// ---------------------------------------------------------------------------
// Cap cuts

Polytope cap_cut(const Polytope& k, const PrimitiveNormal& z, const Rational& eps) {
  if (eps <= 0) throw Error(ErrorKind::BadParams, "cap depth must be positive");
  const Polytope cut = clip_halfspace(k, Halfspace{z, support_value(k, z) - eps, Sense::LessEqual});
  if (!cut.full_dimensional()) throw Error(ErrorKind::EmptyOrFlat, "cap cut leaves no full-dimensional body");
  return cut;
}

bool projection_preserved(const Polytope& k, const Polytope& m, const Vector& v) {
  return project_along(k, v).polytope == project_along(m, v).polytope;
}

std::vector<PrimitiveNormal> support_drop_set(const Polytope& k, const Polytope& m) {
  std::vector<PrimitiveNormal> out;
  for (const auto& f : k.facets()) {
    if (support_value(m, f.normal) < f.offset) out.push_back(f.normal);
  }
  return out;
}

Rational max_facet_sagitta(const Polytope& k, const PrimitiveNormal& z) {
  const Rational h = support_value(k, z);
  std::vector<bool> on_face(k.vertex_count());
  for (std::size_t v = 0; v < k.vertex_count(); ++v) on_face[v] = dot(z.coords(), k.vertices()[v]) == h;
  Rational best = 0;
  for (const auto& f : k.facets()) {
    if (f.normal == z) continue;
    if (std::none_of(f.vertices.begin(), f.vertices.end(), [&](std::size_t v) { return on_face[v]; })) continue;
    Rational lowest = h;
    for (auto v : f.vertices) lowest = std::min(lowest, Rational(dot(z.coords(), k.vertices()[v])));
    best = std::max(best, Rational(h - lowest));
  }
  return best;
}

StrictPointExperiment strict_point_experiment(const Polytope& k, const PrimitiveNormal& z, const Rational& depth,
                                              const Vector& v) {
  StrictPointExperiment e{z, depth, v, cap_cut(k, z, depth), false, {}, 0, false, {}};
  e.projection_preserved = projection_preserved(k, e.cap, v);
  e.drop_set = support_drop_set(k, e.cap);
  e.max_sagitta = max_facet_sagitta(k, z);
  e.depth_clears_sagitta = depth >= 3 * e.max_sagitta;
  e.certificate = bezout_gap(segment(Rational(-1) * v, v), e.cap, k);
  return e;
}

// ---------------------------------------------------------------------------
// Proportionality

std::optional<Rational> measures_proportional(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  if (a.size() != b.size() || a.empty()) return std::nullopt;
  std::optional<Rational> lambda;
  auto ia = a.atoms().begin();
  for (auto ib = b.atoms().begin(); ib != b.atoms().end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return std::nullopt;
    const Rational ratio = ia->second / ib->second;
    if (!lambda) lambda = ratio;
    else if (*lambda != ratio) return std::nullopt;
  }
  if (*lambda <= 0) return std::nullopt;
  return lambda;
}

std::optional<Rational> homothety_check(const Polytope& k, const Polytope& p) {
  require_full(k, "K");
  require_full(p, "P");
  require_same_dim(k, p);
  if (k.vertex_count() != p.vertex_count()) return std::nullopt;
  // x -> lambda x + c with lambda > 0 preserves lexicographic order, so the
  // sorted vertex lists must correspond index by index.
  const auto& kv = k.vertices();
  const auto& pv = p.vertices();
  const Vector dk = kv[1] - kv[0];
  const Vector dp = pv[1] - pv[0];
  std::size_t axis = 0;
  while (dk[axis] == 0) ++axis;
  const Rational lambda = dp[axis] / dk[axis];
  if (lambda <= 0) return std::nullopt;
  const Vector shift = pv[0] - lambda * kv[0];
  for (std::size_t i = 0; i < kv.size(); ++i) {
    if (lambda * kv[i] + shift != pv[i]) return std::nullopt;
  }
  return lambda;
}

MeasureIdentityReport lemma_measure_power_identity(const Polytope& k, const MoveSpec& spec, std::size_t r) {
  const std::size_t n = k.ambient_dim();
  if (r + 1 > n) throw Error(ErrorKind::BadArity, "r must satisfy 0 <= r <= n-1");
  const Polytope moved = move_facet(k, spec);

  MeasureIdentityReport report;
  report.lambda = integrate_support(moved, surface_area_measure(k)) / volume(k);

  std::vector<Polytope> bodies = repeated(moved, r);
  for (std::size_t i = r; i + 1 < n; ++i) bodies.push_back(k);
  report.lhs = mixed_area_measure(std::span<const Polytope>(bodies));
  report.rhs = surface_area_measure(k).scaled(power(report.lambda, r));
  report.residual = report.lhs.minus(report.rhs);
  report.holds = report.residual.empty();
  return report;
}

Rational af_spot_check(const Polytope& l, const Polytope& m, const std::vector<Polytope>& rest) {
  require_same_dim(l, m);
  const std::size_t n = l.ambient_dim();
  if (rest.size() + 2 != n) throw Error(ErrorKind::DimensionMismatch, "AF check needs n-2 further bodies");
  auto mv = [&](const Polytope& a, const Polytope& b) {
    std::vector<Polytope> t{a, b};
    t.insert(t.end(), rest.begin(), rest.end());
    return mixed_volume(std::span<const Polytope>(t));
  };
  const Rational lm = mv(l, m);
  return lm * lm - mv(l, l) * mv(m, m);
}

Rational facet_move_linearity_check(const Polytope& k, const Polytope& p, std::size_t facet_index, const Rational& t) {
  require_same_dim(k, p);
  const std::size_t n = k.ambient_dim();
  const Polytope moved = move_facet(k, MoveSpec{facet_index, t});
  const PrimitiveNormal& z = k.facets()[facet_index].normal;
  auto mv = [&](const Polytope& first) {
    std::vector<Polytope> tuple{first};
    for (std::size_t i = 1; i < n; ++i) tuple.push_back(p);
    return mixed_volume(std::span<const Polytope>(tuple));
  };
  const Rational scale_n(static_cast<unsigned long>(n));
  return scale_n * mv(moved) - scale_n * mv(k) - t * surface_area_measure(p).weight(z);
}

// ---------------------------------------------------------------------------
// Audit

AuditReport simplex_audit(const Polytope& k) {
  require_full(k, "K");
  check_dimension_limit(k.ambient_dim());
  AuditReport report;
  const DiscreteMeasure base = surface_area_measure(k);
  bool all = true;
  for (std::size_t i = 0; i < k.facets().size(); ++i) {
    const MoveRange range = safe_move_range(k, i);
    FacetAuditRecord rec;
    rec.facet_index = i;
    rec.t = range.t_max / 2;
    rec.lambda = measures_proportional(surface_area_measure(move_facet(k, {i, rec.t})), base);
    rec.proportional = rec.lambda.has_value();
    const bool half = measures_proportional(surface_area_measure(move_facet(k, {i, rec.t / 2})), base).has_value();
    rec.confirmed = half == rec.proportional;
    all = all && rec.proportional;
    report.facets.push_back(std::move(rec));
  }
  report.simplex = all;
  report.vertex_count_is_simplex = k.vertex_count() == k.ambient_dim() + 1;
  return report;
}

}  // namespace mvlab

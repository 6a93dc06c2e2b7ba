#include "mvlab/polytope.hpp"

#include "mvlab/error.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <iterator>
#include <mutex>
#include <string>

namespace mvlab {

std::size_t dimension_limit() {
  const char* env = std::getenv("MVLAB_DIM_LIMIT");
  if (env == nullptr || *env == '\0') return kMaxDimension;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 1) return kMaxDimension;
  return std::min<std::size_t>(kMaxDimension, static_cast<std::size_t>(value));
}

void check_dimension_limit(std::size_t dim) {
  const std::size_t limit = dimension_limit();
  if (dim > limit) {
    throw Error(ErrorKind::DimensionLimit,
                "dimension " + std::to_string(dim) + " exceeds limit " + std::to_string(limit));
  }
}

// ---------------------------------------------------------------------------
// PrimitiveNormal / Halfspace

PrimitiveNormal::PrimitiveNormal(IntVector coords) {
  if (std::all_of(coords.begin(), coords.end(), [](const Integer& x) { return x == 0; })) {
    throw Error(ErrorKind::ZeroVector, "normal must be nonzero");
  }
  coords_ = primitive(coords);
}

PrimitiveNormal PrimitiveNormal::from_direction(const Vector& direction) {
  if (is_zero(direction)) throw Error(ErrorKind::ZeroVector, "direction must be nonzero");
  return PrimitiveNormal(primitive(direction));
}

Integer PrimitiveNormal::norm_squared() const {
  Integer s = 0;
  for (const auto& x : coords_) s += x * x;
  return s;
}

PrimitiveNormal PrimitiveNormal::operator-() const {
  IntVector c = coords_;
  for (auto& x : c) x = -x;
  return PrimitiveNormal(std::move(c));
}

Halfspace Halfspace::make(const Vector& normal, const Rational& bound, Sense sense) {
  PrimitiveNormal z = PrimitiveNormal::from_direction(normal);
  // z = c * normal for some c > 0; find c from any nonzero entry.
  std::size_t k = 0;
  while (normal[k] == 0) ++k;
  const Rational c = Rational(z[k]) / normal[k];
  return Halfspace{std::move(z), c * bound, sense};
}

bool Halfspace::contains(const Vector& x) const {
  const Rational v = dot(normal.coords(), x);
  return sense == Sense::LessEqual ? v <= bound : v >= bound;
}

Halfspace Halfspace::complement_closure() const {
  return Halfspace{normal, bound, sense == Sense::LessEqual ? Sense::GreaterEqual : Sense::LessEqual};
}

Halfspace Halfspace::as_less_equal() const {
  if (sense == Sense::LessEqual) return *this;
  return Halfspace{-normal, -bound, Sense::LessEqual};
}

// ---------------------------------------------------------------------------
// Polytope

struct Polytope::Cache {
  std::vector<hull::HullFacet> hyperplanes;  // vertex indices refer to vertices_
  std::once_flag facets_once;
  std::vector<FacetData> facets;
  std::once_flag volume_once;
  Rational volume;
};

Polytope::Polytope() : cache_(std::make_shared<Cache>()) {}

namespace {

// Index of the last nonzero entry.
std::size_t last_nonzero(const IntVector& z) {
  std::size_t k = z.size();
  while (k-- > 0) {
    if (z[k] != 0) return k;
  }
  assert(false);
  return 0;
}

std::vector<Vector> without_coordinate(const std::vector<Vector>& points, std::size_t k) {
  std::vector<Vector> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    Vector q;
    q.reserve(p.size() - 1);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j != k) q.push_back(p[j]);
    }
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace

Polytope Polytope::from_points(std::vector<Vector> points, std::size_t ambient_dim) {
  Polytope result;
  result.ambient_dim_ = ambient_dim;
  if (points.empty()) return result;
  for (const auto& p : points) {
    if (p.size() != ambient_dim) throw Error(ErrorKind::DimensionMismatch, "point length differs from ambient dimension");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  const auto pivots = row_reduce(diffs);
  const std::size_t k = pivots.size();
  result.affine_dim_ = static_cast<int>(k);

  if (k == 0) {
    result.vertices_ = {points[0]};
    return result;
  }

  // Coordinate projection onto the pivot columns is injective on the affine hull.
  std::vector<Vector> projected;
  projected.reserve(points.size());
  for (const auto& p : points) {
    Vector q;
    for (auto c : pivots) q.push_back(p[c]);
    projected.push_back(std::move(q));
  }

  hull::HullResult h;
  if (k == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < projected.size(); ++i) {
      if (projected[i][0] < projected[lo][0]) lo = i;
      if (projected[i][0] > projected[hi][0]) hi = i;
    }
    h.vertices = {std::min(lo, hi), std::max(lo, hi)};
    h.facets.push_back({IntVector{-1}, -projected[lo][0], {lo}});
    h.facets.push_back({IntVector{1}, projected[hi][0], {hi}});
  } else if (k == 2) {
    h = hull::monotone_chain(projected);
  } else {
    h = hull::double_description(projected);
  }

  std::vector<std::size_t> position(points.size(), 0);
  for (std::size_t i = 0; i < h.vertices.size(); ++i) {
    position[h.vertices[i]] = i;
    result.vertices_.push_back(points[h.vertices[i]]);
  }
  if (k == ambient_dim) {
    for (auto& f : h.facets) {
      for (auto& v : f.vertices) v = position[v];
      std::sort(f.vertices.begin(), f.vertices.end());
    }
    // Deterministic facet order: by primitive normal.
    std::sort(h.facets.begin(), h.facets.end(),
              [](const hull::HullFacet& a, const hull::HullFacet& b) { return a.normal < b.normal; });
    result.cache_->hyperplanes = std::move(h.facets);
  }
  return result;
}

const std::vector<FacetData>& Polytope::facets() const {
  if (!full_dimensional()) throw Error(ErrorKind::DegenerateInput, "facets require a full-dimensional polytope");
  std::call_once(cache_->facets_once, [this] {
    std::vector<FacetData> out;
    for (const auto& hp : cache_->hyperplanes) {
      const std::size_t k = last_nonzero(hp.normal);
      std::vector<Vector> pts;
      for (auto v : hp.vertices) pts.push_back(vertices_[v]);
      const Polytope projected = Polytope::from_points(without_coordinate(pts, k), ambient_dim_ - 1);
      Rational w = volume(projected) / abs(Rational(hp.normal[k]));
      out.push_back(FacetData{PrimitiveNormal(hp.normal), hp.offset, hp.vertices, std::move(w)});
    }
    cache_->facets = std::move(out);
  });
  return cache_->facets;
}

const Rational& Polytope::cached_volume() const {
  std::call_once(cache_->volume_once, [this] {
    if (empty()) {
      cache_->volume = 0;
    } else if (ambient_dim_ == 0) {
      cache_->volume = 1;  // counting measure on R^0
    } else if (!full_dimensional()) {
      cache_->volume = 0;
    } else {
      // Pyramids from the first vertex over every facet.
      const Vector& apex = vertices_.front();
      Rational sum = 0;
      for (const auto& f : facets()) {
        const Rational height = f.offset - dot(f.normal.coords(), apex);
        if (height != 0) sum += height * f.normalized_volume;
      }
      cache_->volume = sum / static_cast<unsigned long>(ambient_dim_);
    }
  });
  return cache_->volume;
}

// ---------------------------------------------------------------------------
// Operations

Polytope convex_hull(const std::vector<Vector>& points, std::size_t dim) {
  check_dimension_limit(dim);
  if (points.size() < dim + 1) throw Error(ErrorKind::DegenerateInput, "need at least dim+1 points");
  Polytope p = Polytope::from_points(points, dim);
  if (!p.full_dimensional()) {
    throw Error(ErrorKind::DegenerateInput,
                "points span affine dimension " + std::to_string(p.affine_dim()) + " < " + std::to_string(dim));
  }
  return p;
}

namespace {

// Every vertex of a pointed polyhedron {A x <= b} solves some nonsingular
// dim x dim subsystem; collect the feasible solutions.
std::vector<Vector> enumerate_basic_points(const std::vector<Halfspace>& hs, std::size_t dim) {
  std::vector<Vector> found;
  const std::size_t n = hs.size();
  if (n < dim) return found;
  std::vector<std::size_t> idx(dim);
  for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
  while (true) {
    Matrix a;
    Vector b;
    for (auto i : idx) {
      a.push_back(hs[i].normal.as_vector());
      b.push_back(hs[i].bound);
    }
    if (auto x = solve(std::move(a), std::move(b))) {
      const bool feasible = std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) { return h.contains(*x); });
      if (feasible) found.push_back(std::move(*x));
    }
    // next combination
    std::size_t pos = dim;
    while (pos > 0 && idx[pos - 1] == n - dim + pos - 1) --pos;
    if (pos == 0) return found;
    --pos;
    ++idx[pos];
    for (std::size_t j = pos + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// {x : <z_i, x> <= 0 for all i} == {0}, i.e. the origin is interior to conv(z_i).
bool recession_cone_trivial(const std::vector<Halfspace>& hs, std::size_t dim) {
  std::vector<Vector> normals;
  for (const auto& h : hs) normals.push_back(h.normal.as_vector());
  const Polytope cone = Polytope::from_points(normals, dim);
  if (!cone.full_dimensional()) return false;
  return std::all_of(cone.facets().begin(), cone.facets().end(), [](const FacetData& f) { return f.offset > 0; });
}

}  // namespace

Polytope vertex_enumeration(const std::vector<Halfspace>& halfspaces, std::size_t dim) {
  check_dimension_limit(dim);
  if (halfspaces.size() > kMaxEnumerationHalfspaces) {
    throw Error(ErrorKind::BadParams, "vertex enumeration is limited to " +
                                          std::to_string(kMaxEnumerationHalfspaces) + " halfspaces");
  }
  std::vector<Halfspace> hs;
  for (const auto& h : halfspaces) {
    if (h.normal.size() != dim) throw Error(ErrorKind::DimensionMismatch, "halfspace dimension differs");
    hs.push_back(h.as_less_equal());
  }

  Matrix normals;
  for (const auto& h : hs) normals.push_back(h.normal.as_vector());
  if (rank(normals) < dim) {
    // A lineality space exists: any nonempty intersection is unbounded. Pin
    // the lineality directions to decide feasibility.
    std::vector<Halfspace> pinned = hs;
    for (const auto& w : nullspace(normals, dim)) {
      auto h = Halfspace::make(w, 0, Sense::LessEqual);
      pinned.push_back(h);
      pinned.push_back(h.complement_closure().as_less_equal());
    }
    if (enumerate_basic_points(pinned, dim).empty()) throw Error(ErrorKind::Empty, "halfspace intersection is empty");
    throw Error(ErrorKind::Unbounded, "halfspace intersection contains a line");
  }

  auto points = enumerate_basic_points(hs, dim);
  if (points.empty()) throw Error(ErrorKind::Empty, "halfspace intersection is empty");
  if (!recession_cone_trivial(hs, dim)) throw Error(ErrorKind::Unbounded, "halfspace intersection is unbounded");
  return Polytope::from_points(std::move(points), dim);
}

const std::vector<FacetData>& facet_structure(const Polytope& p) { return p.facets(); }

Rational support_value(const Polytope& p, const IntVector& z) {
  if (p.empty()) throw Error(ErrorKind::Empty, "support function of the empty set");
  if (z.size() != p.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "direction dimension differs");
  Rational best = dot(z, p.vertices().front());
  for (std::size_t i = 1; i < p.vertices().size(); ++i) {
    Rational v = dot(z, p.vertices()[i]);
    if (v > best) best = std::move(v);
  }
  return best;
}

Rational support_value(const Polytope& p, const PrimitiveNormal& z) { return support_value(p, z.coords()); }

Polytope face_in_direction(const Polytope& p, const PrimitiveNormal& z) {
  const Rational h = support_value(p, z);
  std::vector<Vector> pts;
  for (const auto& v : p.vertices()) {
    if (dot(z.coords(), v) == h) pts.push_back(v);
  }
  return Polytope::from_points(std::move(pts), p.ambient_dim());
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "Minkowski sum of different dimensions");
  std::vector<Vector> pts;
  pts.reserve(p.vertex_count() * q.vertex_count());
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) pts.push_back(a + b);
  }
  return Polytope::from_points(std::move(pts), p.ambient_dim());
}

Polytope scale(const Polytope& p, const Rational& factor) {
  std::vector<Vector> pts;
  for (const auto& v : p.vertices()) pts.push_back(factor * v);
  return Polytope::from_points(std::move(pts), p.ambient_dim());
}

Polytope translate(const Polytope& p, const Vector& offset) {
  std::vector<Vector> pts;
  for (const auto& v : p.vertices()) pts.push_back(v + offset);
  return Polytope::from_points(std::move(pts), p.ambient_dim());
}

Polytope segment(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "segment endpoints differ in dimension");
  return Polytope::from_points({a, b}, a.size());
}

Rational volume(const Polytope& p) { return p.cached_volume(); }

Polytope clip_halfspace(const Polytope& p, const Halfspace& h) {
  const Halfspace le = h.as_less_equal();
  std::vector<Rational> slack;  // <z, x> - bound, nonpositive inside
  slack.reserve(p.vertex_count());
  for (const auto& v : p.vertices()) slack.push_back(dot(le.normal.coords(), v) - le.bound);

  std::vector<Vector> pts;
  for (std::size_t i = 0; i < p.vertex_count(); ++i) {
    if (slack[i] <= 0) pts.push_back(p.vertices()[i]);
  }
  // Crossings of all inside/outside vertex pairs lie in P ∩ H and include
  // every crossing of an edge.
  for (std::size_t i = 0; i < p.vertex_count(); ++i) {
    if (slack[i] >= 0) continue;
    for (std::size_t j = 0; j < p.vertex_count(); ++j) {
      if (slack[j] <= 0) continue;
      const Rational s = slack[i] / (slack[i] - slack[j]);
      pts.push_back(p.vertices()[i] + s * (p.vertices()[j] - p.vertices()[i]));
    }
  }
  return Polytope::from_points(std::move(pts), p.ambient_dim());
}

Polytope drop_coordinate(const Polytope& p, std::size_t k) {
  if (k >= p.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "coordinate index out of range");
  return Polytope::from_points(without_coordinate(p.vertices(), k), p.ambient_dim() - 1);
}

Projection project_along(const Polytope& p, const Vector& v) {
  if (v.size() != p.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "projection direction dimension differs");
  if (is_zero(v)) throw Error(ErrorKind::ZeroVector, "projection direction must be nonzero");
  std::size_t k = v.size();
  while (v[--k] == 0) {
  }
  const Rational norm2 = dot(v, v);
  std::vector<Vector> pts;
  for (const auto& x : p.vertices()) {
    const Rational t = dot(x, v) / norm2;
    Vector c;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j != k) c.push_back(x[j] - t * v[j]);
    }
    pts.push_back(std::move(c));
  }
  return Projection{Polytope::from_points(std::move(pts), p.ambient_dim() - 1), norm2 / (v[k] * v[k]), k};
}

std::vector<std::pair<std::size_t, std::size_t>> edges(const Polytope& p) {
  const auto& fs = p.facets();
  const std::size_t n = p.ambient_dim();
  const std::size_t nv = p.vertex_count();
  std::vector<std::vector<std::size_t>> incident(nv);
  for (std::size_t f = 0; f < fs.size(); ++f) {
    for (auto v : fs[f].vertices) incident[v].push_back(f);
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = i + 1; j < nv; ++j) {
      std::vector<std::size_t> common;
      std::set_intersection(incident[i].begin(), incident[i].end(), incident[j].begin(), incident[j].end(),
                            std::back_inserter(common));
      if (common.size() + 1 < n) continue;
      Matrix rows;
      for (auto f : common) rows.push_back(fs[f].normal.as_vector());
      if (rank(rows) == n - 1) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace mvlab

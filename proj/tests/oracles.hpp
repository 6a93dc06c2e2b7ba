#pragma once

// Test-only reference computations. Nothing here calls the hull, volume or
// mixed-volume code under test except to read vertex lists.

#include "mvlab/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace mvlab::oracle {

struct Plane {
  Vector normal;
  Rational offset;
};

// All hyperplanes through d affinely independent points with every point on
// one side; duplicates removed. O(m^d * m).
inline std::vector<Plane> brute_force_facets(const std::vector<Vector>& pts) {
  const std::size_t d = pts.front().size();
  const std::size_t m = pts.size();
  std::vector<Plane> out;
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  auto canonical = [](Plane p) {
    Rational s = 0;
    for (auto& x : p.normal) {
      if (x != 0) {
        s = abs(x);
        break;
      }
    }
    for (auto& x : p.normal) x /= s;
    p.offset /= s;
    return p;
  };
  while (true) {
    Matrix rows;
    for (std::size_t i = 1; i < d; ++i) rows.push_back(pts[idx[i]] - pts[idx[0]]);
    Matrix ns = d == 1 ? Matrix{Vector{Rational(1)}} : nullspace(rows, d);
    if (ns.size() == 1) {
      Plane p{ns[0], dot(ns[0], pts[idx[0]])};
      int below = 0, above = 0;
      for (const auto& q : pts) {
        const Rational v = dot(p.normal, q) - p.offset;
        if (v < 0) ++below;
        if (v > 0) ++above;
      }
      if (below == 0 || above == 0) {
        if (below == 0) {
          for (auto& x : p.normal) x = -x;
          p.offset = -p.offset;
        }
        if (below + above > 0) {
          p = canonical(p);
          bool dup = std::any_of(out.begin(), out.end(),
                                 [&](const Plane& o) { return o.normal == p.normal && o.offset == p.offset; });
          if (!dup) out.push_back(p);
        }
      }
    }
    std::size_t pos = d;
    while (pos > 0 && idx[pos - 1] == m - d + pos - 1) --pos;
    if (pos == 0) break;
    --pos;
    ++idx[pos];
    for (std::size_t j = pos + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline Rational shoelace_area(std::vector<Vector> pts) {
  // Sort by angle around the centroid using exact half-plane + cross tests.
  Vector c{0, 0};
  for (const auto& p : pts) c = c + p;
  c = Rational(1, static_cast<unsigned long>(pts.size())) * c;
  auto half = [&](const Vector& p) {
    const Vector d = p - c;
    return (d[1] > 0 || (d[1] == 0 && d[0] > 0)) ? 0 : 1;
  };
  std::sort(pts.begin(), pts.end(), [&](const Vector& a, const Vector& b) {
    if (half(a) != half(b)) return half(a) < half(b);
    const Vector da = a - c, db = b - c;
    return da[0] * db[1] - da[1] * db[0] > 0;
  });
  Rational s = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % pts.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return abs(s) / 2;
}

inline Rational det3(const Vector& a, const Vector& b, const Vector& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline Vector cross3(const Vector& a, const Vector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Volume of the hull of 3D points: for each brute-force facet, order its
// points by angle around the facet centroid and fan-triangulate; sum the
// signed tetrahedra against an interior reference point.
inline Rational fan_volume_3d(const std::vector<Vector>& pts) {
  Vector ref{0, 0, 0};
  for (const auto& p : pts) ref = ref + p;
  ref = Rational(1, static_cast<unsigned long>(pts.size())) * ref;
  Rational total = 0;
  for (const auto& plane : brute_force_facets(pts)) {
    std::vector<Vector> face;
    for (const auto& p : pts) {
      if (dot(plane.normal, p) == plane.offset) face.push_back(p);
    }
    Vector c{0, 0, 0};
    for (const auto& p : face) c = c + p;
    c = Rational(1, static_cast<unsigned long>(face.size())) * c;
    const Vector axis0 = face[0] - c;
    const Vector axis1 = cross3(plane.normal, axis0);
    auto key_half = [&](const Vector& p) {
      const Vector d = p - c;
      const Rational y = dot(d, axis1), x = dot(d, axis0);
      return (y > 0 || (y == 0 && x > 0)) ? 0 : 1;
    };
    std::sort(face.begin(), face.end(), [&](const Vector& a, const Vector& b) {
      if (key_half(a) != key_half(b)) return key_half(a) < key_half(b);
      const Vector da = a - c, db = b - c;
      return dot(cross3(da, db), plane.normal) > 0;
    });
    for (std::size_t i = 1; i + 1 < face.size(); ++i) {
      total += abs(det3(face[0] - ref, face[i] - ref, face[i + 1] - ref));
    }
  }
  return total / 6;
}

// Mixed volume of axis-parallel boxes with side lengths sides[i][j] (body i,
// axis j): V = perm(sides) / n!.
inline Rational box_mixed_volume(const std::vector<std::vector<Rational>>& sides) {
  const std::size_t n = sides.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational s = 0;
  unsigned long count = 0;
  do {
    Rational term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= sides[i][perm[i]];
    s += term;
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return s / count;
}

}  // namespace mvlab::oracle

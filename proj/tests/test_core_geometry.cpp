#include "doctest.h"

#include "mvlab/error.hpp"
#include "mvlab/hull.hpp"
#include "mvlab/polytope.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <set>

using namespace mvlab;
using namespace mvlab::testing;

namespace {

std::set<Vector> vertex_set(const Polytope& p) { return {p.vertices().begin(), p.vertices().end()}; }

ErrorKind error_kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected mvlab::Error");
  return ErrorKind::BadParams;
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(parse_rational("-6/4") == q(-3, 2));
  CHECK(to_string(q(-3, 2)) == "-3/2");
  CHECK(to_string(q(4, 2)) == "2");
  CHECK(error_kind_of([] { parse_rational("1/0"); }) == ErrorKind::ParseError);
  CHECK(error_kind_of([] { parse_rational("x"); }) == ErrorKind::ParseError);
  // 355/113 is the best approximation of pi with denominator <= 1000.
  CHECK(best_rational_approximation(3.141592653589793, 1000) == q(355, 113));
  CHECK(best_rational_approximation(0.5, 10) == q(1, 2));
}

TEST_CASE("convex_hull drops interior points and rejects flats") {
  auto tri = convex_hull({vec({0, 0}), vec({1, 0}), vec({0, 1}), vec({q("1/4"), q("1/4")})}, 2);
  CHECK(tri.vertex_count() == 3);

  std::vector<Vector> corners = unit_cube(3).vertices();
  auto cube = convex_hull(corners, 3);
  CHECK(cube.vertex_count() == 8);
  CHECK(cube.facets().size() == 6);

  CHECK(error_kind_of([] { convex_hull({vec({0, 0}), vec({1, 0}), vec({2, 0})}, 2); }) == ErrorKind::DegenerateInput);

  auto flat = Polytope::from_points({vec({0, 0}), vec({1, 0}), vec({2, 0})}, 2);
  CHECK(flat.affine_dim() == 1);
  CHECK(flat.vertex_count() == 2);
}

TEST_CASE("convex_hull honours the dimension limit") {
  std::vector<Vector> pts{Vector(5)};
  for (std::size_t i = 0; i < 5; ++i) pts.push_back(unit(5, i));
  CHECK(error_kind_of([&] { convex_hull(pts, 5); }) == ErrorKind::DimensionLimit);
}

TEST_CASE("vertex_enumeration") {
  auto ge = [](Vector n, Rational b) { return Halfspace::make(n, b, Sense::GreaterEqual); };
  auto le = [](Vector n, Rational b) { return Halfspace::make(n, b, Sense::LessEqual); };

  auto tri = vertex_enumeration({ge(vec({1, 0}), 0), ge(vec({0, 1}), 0), le(vec({1, 1}), 1)}, 2);
  CHECK(tri == standard_simplex(2));

  std::vector<Halfspace> cube_hs;
  for (std::size_t i = 0; i < 3; ++i) {
    cube_hs.push_back(ge(unit(3, i), 0));
    cube_hs.push_back(le(unit(3, i), 1));
  }
  CHECK(vertex_enumeration(cube_hs, 3) == unit_cube(3));

  CHECK(error_kind_of([&] { vertex_enumeration({ge(vec({1, 0}), 0), ge(vec({0, 1}), 0)}, 2); }) ==
        ErrorKind::Unbounded);
  CHECK(error_kind_of([&] { vertex_enumeration({ge(vec({1, 0}), 1), le(vec({1, 0}), 0), ge(vec({0, 1}), 0),
                                                le(vec({0, 1}), 1)},
                                               2); }) == ErrorKind::Empty);
  // A strip: lineality along e2.
  CHECK(error_kind_of([&] { vertex_enumeration({ge(vec({1, 0}), 0), le(vec({1, 0}), 1)}, 2); }) ==
        ErrorKind::Unbounded);
  CHECK(error_kind_of([&] { vertex_enumeration({ge(vec({1, 0}), 2), le(vec({1, 0}), 1)}, 2); }) == ErrorKind::Empty);
}

TEST_CASE("facet_structure") {
  const auto square = unit_cube(2);
  const auto& sq = facet_structure(square);
  REQUIRE(sq.size() == 4);
  for (const auto& f : sq) CHECK(f.normalized_volume == 1);

  const auto triangle = standard_simplex(2);
  const auto& tri = facet_structure(triangle);
  REQUIRE(tri.size() == 3);
  std::set<IntVector> normals;
  for (const auto& f : tri) {
    normals.insert(f.normal.coords());
    CHECK(f.normalized_volume == 1);  // sqrt(2) / |(1,1)|
  }
  CHECK(normals == std::set<IntVector>{{-1, 0}, {0, -1}, {1, 1}});

  const auto cube = unit_cube(3);
  for (const auto& f : facet_structure(cube)) CHECK(f.normalized_volume == 1);
}

TEST_CASE("facet incidence is exact") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_polytope(rng, 3, 9);
    for (const auto& f : p.facets()) {
      for (std::size_t v = 0; v < p.vertex_count(); ++v) {
        const Rational val = dot(f.normal.coords(), p.vertices()[v]);
        const bool listed = std::binary_search(f.vertices.begin(), f.vertices.end(), v);
        if (listed) CHECK(val == f.offset);
        else CHECK(val < f.offset);
      }
    }
  }
}

TEST_CASE("support_value") {
  CHECK(support_value(unit_cube(2), PrimitiveNormal({1, 1})) == 2);
  CHECK(support_value(standard_simplex(2), PrimitiveNormal({1, 1})) == 1);
  CHECK(support_value(segment(vec({0, -1}), vec({0, 1})), PrimitiveNormal({1, 0})) == 0);
  CHECK(error_kind_of([] { PrimitiveNormal({0, 0}); }) == ErrorKind::ZeroVector);
  CHECK(PrimitiveNormal({2, -4}).coords() == IntVector{1, -2});
}

TEST_CASE("face_in_direction") {
  auto top = face_in_direction(unit_cube(2), PrimitiveNormal({0, 1}));
  CHECK(top == segment(vec({0, 1}), vec({1, 1})));
  CHECK(top.affine_dim() == 1);

  auto corner = face_in_direction(unit_cube(2), PrimitiveNormal({1, 1}));
  CHECK(corner.affine_dim() == 0);
  CHECK(corner.vertices() == std::vector<Vector>{vec({1, 1})});

  auto bottom = face_in_direction(unit_cube(3), PrimitiveNormal({0, 0, -1}));
  CHECK(bottom.affine_dim() == 2);
  CHECK(bottom.vertex_count() == 4);
}

TEST_CASE("minkowski_sum") {
  CHECK(minkowski_sum(unit_segment(2, 0), unit_segment(2, 1)) == unit_cube(2));
  auto trap = minkowski_sum(standard_simplex(2), unit_segment(2, 0));
  CHECK(vertex_set(trap) == std::set<Vector>{vec({0, 0}), vec({2, 0}), vec({1, 1}), vec({0, 1})});
  auto shifted = minkowski_sum(unit_cube(3), Polytope::from_points({vec({1, 2, 3})}, 3));
  CHECK(shifted == translate(unit_cube(3), vec({1, 2, 3})));
  CHECK(error_kind_of([] { minkowski_sum(unit_cube(2), unit_cube(3)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("volume") {
  CHECK(volume(standard_simplex(3)) == q(1, 6));
  CHECK(volume(unit_cube(3)) == 1);
  CHECK(volume(cross_polytope(3)) == q(4, 3));
  CHECK(oracle::fan_volume_3d(cross_polytope(3).vertices()) == q(4, 3));
  CHECK(volume(unit_segment(2, 0)) == 0);
  CHECK(volume(standard_simplex(4)) == q(1, 24));
  CHECK(volume(cross_polytope(4)) == q(2, 3));  // 16 orthant simplices of volume 1/24
}

TEST_CASE("clip_halfspace") {
  auto pent = clip_halfspace(unit_cube(2), Halfspace::make(vec({1, 1}), q("3/2")));
  CHECK(vertex_set(pent) == std::set<Vector>{vec({0, 0}), vec({1, 0}), vec({1, q("1/2")}), vec({q("1/2"), 1}),
                                             vec({0, 1})});
  CHECK(clip_halfspace(unit_cube(2), Halfspace::make(vec({1, 0}), 2)) == unit_cube(2));
  CHECK(clip_halfspace(unit_cube(2), Halfspace::make(vec({1, 0}), -1)).empty());
  // Touching from outside leaves a flat face.
  CHECK(clip_halfspace(unit_cube(2), Halfspace::make(vec({1, 0}), 0)).affine_dim() == 1);
}

TEST_CASE("project_along") {
  auto a = project_along(unit_cube(3), unit(3, 2));
  CHECK(a.polytope == unit_cube(2));
  CHECK(a.gram_correction == 1);

  auto b = project_along(unit_cube(2), unit(2, 1));
  CHECK(b.polytope == segment(vec({0}), vec({1})));
  CHECK(b.gram_correction == 1);

  auto c = project_along(unit_cube(2), vec({1, 1}));
  CHECK(c.gram_correction == 2);
  CHECK(volume(c.polytope) == 1);  // true width sqrt(2) * 1

  CHECK(error_kind_of([] { project_along(unit_cube(2), vec({0, 0})); }) == ErrorKind::ZeroVector);
}

TEST_CASE("edges") {
  CHECK(edges(unit_cube(3)).size() == 12);
  CHECK(edges(cross_polytope(3)).size() == 12);
  CHECK(edges(standard_simplex(4)).size() == 10);
  CHECK(edges(unit_cube(2)).size() == 4);
}

// ---------------------------------------------------------------------------
// Properties

TEST_CASE("double description agrees with monotone chain in the plane") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vector> pts;
    for (int i = 0; i < 12; ++i) pts.push_back(random_rational_point(rng, 2));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto dd = hull::double_description(pts);
    auto mc = hull::monotone_chain(pts);
    CHECK(dd.vertices == mc.vertices);
    std::set<std::pair<IntVector, Rational>> a, b;
    for (const auto& f : dd.facets) a.emplace(f.normal, f.offset);
    for (const auto& f : mc.facets) b.emplace(f.normal, f.offset);
    CHECK(a == b);
  }
}

TEST_CASE("facets agree with brute-force enumeration in dimensions 3 and 4") {
  std::mt19937_64 rng(12);
  for (std::size_t n : {3u, 4u}) {
    for (int trial = 0; trial < 15; ++trial) {
      auto p = random_polytope(rng, n, n + 5, 3);
      auto planes = oracle::brute_force_facets(p.vertices());
      CHECK(planes.size() == p.facets().size());
      for (const auto& f : p.facets()) {
        const Vector z = f.normal.as_vector();
        bool found = std::any_of(planes.begin(), planes.end(), [&](const oracle::Plane& pl) {
          // parallel with same orientation and same hyperplane
          Rational s = 0;
          for (std::size_t i = 0; i < n; ++i) {
            if (z[i] != 0) {
              s = pl.normal[i] / z[i];
              break;
            }
          }
          return s > 0 && s * z == pl.normal && s * f.offset == pl.offset;
        });
        CHECK(found);
      }
    }
  }
}

TEST_CASE("volume agrees with shoelace and fan triangulation oracles") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Vector> pts2;
    for (int i = 0; i < 9; ++i) pts2.push_back(random_rational_point(rng, 2));
    auto p2 = Polytope::from_points(pts2, 2);
    if (p2.full_dimensional()) CHECK(volume(p2) == oracle::shoelace_area(p2.vertices()));

    auto p3 = random_polytope(rng, 3, 8);
    CHECK(volume(p3) == oracle::fan_volume_3d(p3.vertices()));
  }
}

TEST_CASE("hull idempotence and H/V round trip") {
  std::mt19937_64 rng(14);
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 8; ++trial) {
      auto p = random_polytope(rng, n, n + 4, 3);
      CHECK(convex_hull(p.vertices(), n) == p);
      std::vector<Halfspace> hs;
      for (const auto& f : p.facets()) hs.push_back(Halfspace{f.normal, f.offset, Sense::LessEqual});
      CHECK(vertex_enumeration(hs, n) == p);
    }
  }
}

TEST_CASE("volume is additive under clipping and translation invariant") {
  std::mt19937_64 rng(15);
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto p = random_polytope(rng, n, n + 4, 3);
      const Vector normal = random_rational_point(rng, n);
      if (is_zero(normal)) continue;
      const Halfspace h = Halfspace::make(normal, dot(normal, p.vertices().front()) / 2);
      CHECK(volume(clip_halfspace(p, h)) + volume(clip_halfspace(p, h.complement_closure())) == volume(p));
      CHECK(volume(translate(p, random_rational_point(rng, n))) == volume(p));
    }
  }
}

TEST_CASE("cone decomposition identity about an interior origin") {
  std::mt19937_64 rng(16);
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 8; ++trial) {
      auto p = random_polytope(rng, n, n + 4, 3);
      Vector centroid(n);
      for (const auto& v : p.vertices()) centroid = centroid + v;
      centroid = Rational(1, static_cast<unsigned long>(p.vertex_count())) * centroid;
      auto centered = translate(p, Rational(-1) * centroid);
      Rational sum = 0;
      for (const auto& f : centered.facets()) sum += f.offset * f.normalized_volume;
      CHECK(sum == static_cast<unsigned long>(n) * volume(centered));
    }
  }
}

TEST_CASE("support of a Minkowski sum is additive") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {2u, 3u}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto a = random_polytope(rng, n, n + 3);
      auto b = random_polytope(rng, n, n + 2);
      auto s = minkowski_sum(a, b);
      for (int k = 0; k < 5; ++k) {
        Vector z = random_rational_point(rng, n);
        if (is_zero(z)) continue;
        auto pz = PrimitiveNormal::from_direction(z);
        CHECK(support_value(s, pz) == support_value(a, pz) + support_value(b, pz));
      }
    }
  }
}

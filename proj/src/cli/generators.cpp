#include "mvlab/cli/generators.hpp"

#include "mvlab/error.hpp"
#include "mvlab/random.hpp"
#include "mvlab/rational.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>

namespace mvlab::cli {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::BadParams, msg); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

void require_dim(std::size_t n, std::size_t lo, const char* what) {
  if (n < lo) bad(std::string(what) + ": dimension must be at least " + std::to_string(lo));
  if (n > dimension_limit()) {
    throw Error(ErrorKind::DimensionLimit,
                std::string(what) + ": dimension " + std::to_string(n) + " exceeds limit " +
                    std::to_string(dimension_limit()));
  }
}

std::size_t parse_size(const std::string& s, const char* what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad(std::string(what) + ": not a nonnegative integer: '" + s + "'");
  return v;
}

// accepts plain digits or b^e
Integer parse_big(const std::string& s, const char* what) {
  const auto caret = s.find('^');
  if (caret == std::string::npos) return Integer(parse_size(s, what));
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), parse_size(s.substr(0, caret), what), parse_size(s.substr(caret + 1), what));
  return r;
}

Rational parse_q(const std::string& s, const char* what) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    bad(std::string(what) + ": not a rational: '" + s + "'");
  }
}

Vector rounded(const std::array<double, 3>& p, std::size_t n, const Integer& max_den) {
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = best_rational_approximation(p[i], max_den);
  return v;
}

}  // namespace

Polytope simplex(std::size_t n) {
  require_dim(n, 1, "simplex");
  std::vector<Vector> pts{Vector(n)};
  for (std::size_t i = 0; i < n; ++i) pts.push_back(unit_vector(n, i));
  return convex_hull(pts, n);
}

Polytope cube(std::size_t n) {
  require_dim(n, 1, "cube");
  std::vector<Vector> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vector p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = (mask >> i) & 1 ? 1 : 0;
    pts.push_back(p);
  }
  return convex_hull(pts, n);
}

Polytope cross_polytope(std::size_t n) {
  require_dim(n, 1, "cross_polytope");
  std::vector<Vector> pts;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(unit_vector(n, i));
    pts.push_back(Rational(-1) * unit_vector(n, i));
  }
  return convex_hull(pts, n);
}

Polytope prism(std::size_t n, const Rational& h) {
  require_dim(n, 2, "prism");
  if (h <= 0) bad("prism: height must be positive");
  std::vector<Vector> pts;
  for (std::size_t j = 0; j < n; ++j) {  // base vertices: 0, e_1 .. e_{n-1}
    Vector base(n);
    if (j > 0) base[j - 1] = 1;
    pts.push_back(base);
    base[n - 1] = h;
    pts.push_back(base);
  }
  return convex_hull(pts, n);
}

Polytope random_hull(std::size_t n, std::size_t m, std::uint64_t seed) {
  require_dim(n, 1, "random_hull");
  if (m < n + 1) bad("random_hull: need at least n+1 points");
  if (m > 64) bad("random_hull: at most 64 points");
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Vector> pts(m, Vector(n));
    for (auto& p : pts) {
      for (auto& c : p) c = rng.uniform(-6, 6);
    }
    Polytope p = Polytope::from_points(std::move(pts), n);
    if (p.full_dimensional()) return p;
  }
  bad("random_hull: no full-dimensional sample");
}

Polytope regular_polygon(std::size_t m, const Integer& max_den) {
  if (m < 3) bad("regular_polygon: need at least 3 vertices");
  if (max_den < 1) bad("regular_polygon: max_denominator must be positive");
  std::vector<Vector> pts;
  for (std::size_t k = 0; k < m; ++k) {
    const double a = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    pts.push_back(rounded({std::cos(a), std::sin(a), 0}, 2, max_den));
  }
  Polytope p = convex_hull(pts, 2);
  if (p.vertex_count() != m) bad("regular_polygon: max_denominator too small, rounding merged vertices");
  return p;
}

Polytope ball_approx_3d(std::size_t subdivisions, const Integer& max_den) {
  if (subdivisions > 4) bad("ball_approx_3d: at most 4 subdivisions");
  if (max_den < 1) bad("ball_approx_3d: max_denominator must be positive");
  require_dim(3, 3, "ball_approx_3d");
  using P = std::array<double, 3>;
  using Tri = std::array<P, 3>;
  auto unitize = [](P p) {
    const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    return P{p[0] / r, p[1] / r, p[2] / r};
  };
  auto mid = [&](const P& a, const P& b) { return unitize({a[0] + b[0], a[1] + b[1], a[2] + b[2]}); };
  std::vector<Tri> tris;
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) tris.push_back({P{double(sx), 0, 0}, P{0, double(sy), 0}, P{0, 0, double(sz)}});
    }
  }
  for (std::size_t s = 0; s < subdivisions; ++s) {
    std::vector<Tri> next;
    for (const auto& [a, b, c] : tris) {
      const P ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      next.push_back({a, ab, ca});
      next.push_back({ab, b, bc});
      next.push_back({ca, bc, c});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  std::map<Vector, bool> unique;  // dedupe shared corners after rounding
  for (const auto& t : tris) {
    for (const auto& p : t) unique.emplace(rounded(p, 3, max_den), true);
  }
  std::vector<Vector> pts;
  for (const auto& [v, _] : unique) pts.push_back(v);
  return convex_hull(pts, 3);
}

Polytope truncated_simplex(std::size_t n, const Rational& eps) {
  require_dim(n, 2, "truncated_simplex");
  if (eps <= 0 || eps >= 1) bad("truncated_simplex: eps must lie in (0, 1)");
  std::vector<Vector> pts;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(unit_vector(n, i));
    pts.push_back(eps * unit_vector(n, i));
  }
  return convex_hull(pts, n);
}

Polytope generate(std::string_view kind, const std::vector<std::string>& params) {
  auto arity = [&](std::size_t k) {
    if (params.size() != k) {
      bad(std::string(kind) + ": expected " + std::to_string(k) + " parameter(s), got " + std::to_string(params.size()));
    }
  };
  if (kind == "simplex") return arity(1), simplex(parse_size(params[0], "simplex"));
  if (kind == "cube") return arity(1), cube(parse_size(params[0], "cube"));
  if (kind == "cross_polytope") return arity(1), cross_polytope(parse_size(params[0], "cross_polytope"));
  if (kind == "prism") return arity(2), prism(parse_size(params[0], "prism"), parse_q(params[1], "prism"));
  if (kind == "random_hull") {
    arity(3);
    return random_hull(parse_size(params[0], "random_hull"), parse_size(params[1], "random_hull"),
                       parse_size(params[2], "random_hull"));
  }
  if (kind == "regular_polygon") {
    arity(2);
    return regular_polygon(parse_size(params[0], "regular_polygon"), parse_big(params[1], "regular_polygon"));
  }
  if (kind == "ball_approx_3d") {
    arity(2);
    return ball_approx_3d(parse_size(params[0], "ball_approx_3d"), parse_big(params[1], "ball_approx_3d"));
  }
  if (kind == "truncated_simplex") {
    arity(2);
    return truncated_simplex(parse_size(params[0], "truncated_simplex"), parse_q(params[1], "truncated_simplex"));
  }
  if (kind == "segment") {
    if (params.empty()) bad("segment: expected the coordinates of v");
    require_dim(params.size(), 1, "segment");
    Vector v;
    for (const auto& c : params) v.push_back(parse_q(c, "segment"));
    return segment(Vector(v.size()), v);
  }
  bad("unknown generator '" + std::string(kind) + "'");
}

Polytope generate(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  std::vector<std::string> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (true) {
      const auto comma = rest.find(',');
      params.emplace_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return generate(kind, params);
}

}  // namespace mvlab::cli

#include "mvlab/hull.hpp"

#include "mvlab/error.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <numeric>

namespace mvlab::hull {

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool subset_of(const Bits& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  friend Bits operator&(const Bits& a, const Bits& b) {
    Bits r = a;
    for (std::size_t i = 0; i < r.words_.size(); ++i) r.words_[i] &= b.words_[i];
    return r;
  }

  bool operator==(const Bits&) const = default;

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  IntVector coords;
  Bits zero;  // processed constraints that are tight on this ray
};

Integer eval(const IntVector& row, const IntVector& ray) {
  Integer s = 0;
  for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * ray[i];
  return s;
}

// Constraint row for point p scaled to integers: L * (p, -1).
IntVector homogenized_row(const Vector& p) {
  Integer l = 1;
  for (const auto& x : p) l = lcm(l, x.get_den());
  IntVector row(p.size() + 1);
  for (std::size_t i = 0; i < p.size(); ++i) row[i] = p[i].get_num() * (l / p[i].get_den());
  row.back() = -l;
  return row;
}

}  // namespace

HullResult double_description(const std::vector<Vector>& points) {
  const std::size_t m = points.size();
  if (m == 0) throw Error(ErrorKind::DegenerateInput, "no points");
  const std::size_t d = points.front().size();
  const std::size_t cone_dim = d + 1;

  std::vector<IntVector> rows(m);
  for (std::size_t i = 0; i < m; ++i) rows[i] = homogenized_row(points[i]);

  // Greedily pick d+1 affinely independent points for the initial simplicial cone.
  std::vector<std::size_t> basis;
  Matrix echelon;
  for (std::size_t i = 0; i < m && basis.size() < cone_dim; ++i) {
    Matrix trial = echelon;
    trial.push_back(to_rational(rows[i]));
    if (rank(trial) > echelon.size()) {
      echelon = std::move(trial);
      basis.push_back(i);
    }
  }
  if (basis.size() < cone_dim) throw Error(ErrorKind::DegenerateInput, "points do not affinely span the space");

  // Rays of {y : A y <= 0} for invertible A are the columns of -A^{-1}.
  std::vector<Ray> rays;
  Matrix a;
  for (auto i : basis) a.push_back(to_rational(rows[i]));
  for (std::size_t j = 0; j < cone_dim; ++j) {
    Vector rhs(cone_dim);
    rhs[j] = -1;
    auto col = solve(a, rhs);
    assert(col);
    Ray ray{primitive(*col), Bits(m)};
    for (std::size_t k = 0; k < cone_dim; ++k) {
      if (k != j) ray.zero.set(basis[k]);
    }
    rays.push_back(std::move(ray));
  }

  std::vector<bool> in_basis(m, false);
  for (auto i : basis) in_basis[i] = true;

  for (std::size_t c = 0; c < m; ++c) {
    if (in_basis[c]) continue;
    std::vector<Integer> value(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      value[r] = eval(rows[c], rays[r].coords);
      const int s = sgn(value[r]);
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
    }
    if (pos.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r) {
        if (value[r] == 0) rays[r].zero.set(c);
      }
      continue;
    }

    std::vector<Ray> next;
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        Bits common = rays[p].zero & rays[n].zero;
        if (common.count() + 2 < cone_dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r != p && r != n && common.subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        // value[p] > 0 > value[n]; the combination is tight on constraint c.
        IntVector combo(cone_dim);
        for (std::size_t k = 0; k < cone_dim; ++k) {
          combo[k] = value[p] * rays[n].coords[k] - value[n] * rays[p].coords[k];
        }
        common.set(c);
        next.push_back(Ray{primitive(combo), std::move(common)});
      }
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (value[r] < 0) {
        next.push_back(std::move(rays[r]));
      } else if (value[r] == 0) {
        rays[r].zero.set(c);
        next.push_back(std::move(rays[r]));
      }
    }
    rays = std::move(next);
  }

  // A point is extreme iff the facets through it meet only in that point.
  HullResult result;
  std::vector<bool> extreme(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    Bits meet(m);
    bool first = true;
    for (const auto& ray : rays) {
      if (!ray.zero.test(i)) continue;
      meet = first ? ray.zero : (meet & ray.zero);
      first = false;
    }
    if (!first && meet.count() == 1) {
      extreme[i] = true;
      result.vertices.push_back(i);
    }
  }

  for (const auto& ray : rays) {
    IntVector normal(ray.coords.begin(), ray.coords.end() - 1);
    Integer g = 0;
    for (const auto& x : normal) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    assert(g != 0);
    HullFacet f;
    for (auto& x : normal) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    f.normal = std::move(normal);
    f.offset = Rational(ray.coords.back(), g);
    f.offset.canonicalize();
    for (std::size_t i = 0; i < m; ++i) {
      if (extreme[i] && ray.zero.test(i)) f.vertices.push_back(i);
    }
    result.facets.push_back(std::move(f));
  }
  return result;
}

namespace {

// Sign of the cross product (b - a) x (c - a).
int orientation(const Vector& a, const Vector& b, const Vector& c) {
  const Rational cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  return sgn(cross);
}

}  // namespace

HullResult monotone_chain(const std::vector<Vector>& points) {
  const std::size_t m = points.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return points[i] < points[j]; });

  // Counter-clockwise chain; strict turns drop collinear points.
  std::vector<std::size_t> chain(2 * m);
  std::size_t k = 0;
  for (std::size_t i : order) {
    while (k >= 2 && orientation(points[chain[k - 2]], points[chain[k - 1]], points[i]) <= 0) --k;
    chain[k++] = i;
  }
  for (std::size_t idx = m - 1, lower = k + 1; idx-- > 0;) {
    const std::size_t i = order[idx];
    while (k >= lower && orientation(points[chain[k - 2]], points[chain[k - 1]], points[i]) <= 0) --k;
    chain[k++] = i;
  }
  chain.resize(k - 1);
  if (chain.size() < 3) throw Error(ErrorKind::DegenerateInput, "points are collinear");

  HullResult result;
  result.vertices = chain;
  std::sort(result.vertices.begin(), result.vertices.end());
  for (std::size_t e = 0; e < chain.size(); ++e) {
    const std::size_t a = chain[e], b = chain[(e + 1) % chain.size()];
    const Vector dir = points[b] - points[a];
    HullFacet f;
    f.normal = primitive(Vector{dir[1], -dir[0]});
    f.offset = dot(f.normal, points[a]);
    f.vertices = {std::min(a, b), std::max(a, b)};
    result.facets.push_back(std::move(f));
  }
  return result;
}

}  // namespace mvlab::hull

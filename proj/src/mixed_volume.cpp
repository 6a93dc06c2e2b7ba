#include "mvlab/mixed_volume.hpp"

#include "mvlab/error.hpp"

#include <cassert>
#include <string>

namespace mvlab {

BodyTuple BodyTuple::with_multiplicities(std::initializer_list<std::pair<Polytope, std::size_t>> parts) {
  BodyTuple t;
  for (const auto& [body, count] : parts) {
    for (std::size_t i = 0; i < count; ++i) t.bodies.push_back(body);
  }
  return t;
}

// ---------------------------------------------------------------------------
// DiscreteMeasure

void DiscreteMeasure::add(const PrimitiveNormal& z, const Rational& w) {
  if (w == 0) return;
  auto [it, inserted] = atoms_.try_emplace(z, w);
  if (!inserted) {
    it->second += w;
    if (it->second == 0) atoms_.erase(it);
  }
}

Rational DiscreteMeasure::weight(const PrimitiveNormal& z) const {
  auto it = atoms_.find(z);
  return it == atoms_.end() ? Rational(0) : it->second;
}

std::vector<PrimitiveNormal> DiscreteMeasure::support() const {
  std::vector<PrimitiveNormal> out;
  out.reserve(atoms_.size());
  for (const auto& [z, w] : atoms_) out.push_back(z);
  return out;
}

Rational DiscreteMeasure::total() const {
  Rational s = 0;
  for (const auto& [z, w] : atoms_) s += w;
  return s;
}

DiscreteMeasure DiscreteMeasure::scaled(const Rational& factor) const {
  DiscreteMeasure out;
  for (const auto& [z, w] : atoms_) out.add(z, factor * w);
  return out;
}

DiscreteMeasure DiscreteMeasure::minus(const DiscreteMeasure& other) const {
  DiscreteMeasure out = *this;
  for (const auto& [z, w] : other.atoms_) out.add(z, -w);
  return out;
}

// ---------------------------------------------------------------------------
// Polarization

namespace {

void check_tuple(std::span<const Polytope> bodies, std::size_t n) {
  for (const auto& b : bodies) {
    if (b.empty()) throw Error(ErrorKind::Empty, "mixed volume of an empty body");
    if (b.ambient_dim() != n) throw Error(ErrorKind::DimensionMismatch, "body dimension differs from tuple dimension");
  }
}

// Distinct bodies with their multiplicities; a slot subset that takes a_j
// copies of body j contributes Vol(sum_j a_j K_j) since K + K = 2K.
struct Grouped {
  std::vector<Polytope> distinct;
  std::vector<std::size_t> count;
};

Grouped group(std::span<const Polytope> bodies) {
  Grouped g;
  for (const auto& b : bodies) {
    std::size_t j = 0;
    while (j < g.distinct.size() && !(g.distinct[j] == b)) ++j;
    if (j == g.distinct.size()) {
      g.distinct.push_back(b);
      g.count.push_back(0);
    }
    ++g.count[j];
  }
  return g;
}

Integer binomial(std::size_t n, std::size_t k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Polytope weighted_sum(const Grouped& g, const std::vector<std::size_t>& take) {
  Polytope acc;
  bool first = true;
  for (std::size_t j = 0; j < g.distinct.size(); ++j) {
    if (take[j] == 0) continue;
    Polytope term = take[j] == 1 ? g.distinct[j] : scale(g.distinct[j], Rational(static_cast<unsigned long>(take[j])));
    acc = first ? term : minkowski_sum(acc, term);
    first = false;
  }
  return acc;
}

Polytope sum_all(std::span<const Polytope> bodies) {
  const Grouped g = group(bodies);
  return weighted_sum(g, g.count);
}

std::size_t last_nonzero(const PrimitiveNormal& z) {
  std::size_t k = z.size();
  while (z[--k] == 0) {
  }
  return k;
}

}  // namespace

Rational mixed_volume(std::span<const Polytope> bodies) {
  const std::size_t n = bodies.size();
  if (n == 0) throw Error(ErrorKind::BadArity, "mixed volume needs at least one body");
  check_dimension_limit(n);
  check_tuple(bodies, n);

  const Grouped g = group(bodies);
  const std::size_t m = g.distinct.size();
  std::vector<std::size_t> take(m, 0);
  Rational total = 0;
  // Odometer over 0 <= take[j] <= count[j].
  while (true) {
    std::size_t j = 0;
    while (j < m && take[j] == g.count[j]) take[j++] = 0;
    if (j == m) break;
    ++take[j];

    std::size_t size = 0;
    Integer ways = 1;
    for (std::size_t i = 0; i < m; ++i) {
      size += take[i];
      ways *= binomial(g.count[i], take[i]);
    }
    const Rational vol = volume(weighted_sum(g, take));
    if (vol == 0) continue;
    if ((n - size) % 2 == 0) total += ways * vol;
    else total -= ways * vol;
  }
  Integer factorial;
  mpz_fac_ui(factorial.get_mpz_t(), n);
  return total / factorial;
}

Rational mixed_volume(const BodyTuple& tuple) { return mixed_volume(std::span<const Polytope>(tuple.bodies)); }

Rational mixed_volume(std::initializer_list<Polytope> bodies) {
  return mixed_volume(std::span<const Polytope>(bodies.begin(), bodies.size()));
}

// ---------------------------------------------------------------------------
// Measures

DiscreteMeasure surface_area_measure(const Polytope& p) {
  DiscreteMeasure m;
  for (const auto& f : p.facets()) m.add(f.normal, f.normalized_volume);
  return m;
}

DiscreteMeasure mixed_area_measure(std::span<const Polytope> bodies) {
  if (bodies.empty()) throw Error(ErrorKind::BadArity, "mixed area measure needs at least one body");
  const std::size_t n = bodies.front().ambient_dim();
  if (bodies.size() + 1 != n) throw Error(ErrorKind::BadArity, "mixed area measure needs n-1 bodies in R^n");
  check_dimension_limit(n);
  check_tuple(bodies, n);

  // The atoms sit at normals where the Minkowski sum of the bodies has an
  // (n-1)-dimensional face.
  const Polytope sum = sum_all(bodies);
  std::vector<PrimitiveNormal> candidates;
  if (sum.full_dimensional()) {
    for (const auto& f : sum.facets()) candidates.push_back(f.normal);
  } else if (sum.affine_dim() + 1 == static_cast<int>(n)) {
    Matrix diffs;
    for (const auto& v : sum.vertices()) diffs.push_back(v - sum.vertices().front());
    const Matrix normal = nullspace(std::move(diffs), n);
    assert(normal.size() == 1);
    const auto z = PrimitiveNormal::from_direction(normal.front());
    candidates = {z, -z};
  } else {
    return {};
  }

  DiscreteMeasure m;
  for (const auto& z : candidates) {
    const std::size_t k = last_nonzero(z);
    std::vector<Polytope> faces;
    faces.reserve(bodies.size());
    for (const auto& b : bodies) faces.push_back(drop_coordinate(face_in_direction(b, z), k));
    const Rational mv = mixed_volume(std::span<const Polytope>(faces));
    m.add(z, mv / abs(Rational(z[k])));
  }
  return m;
}

DiscreteMeasure mixed_area_measure(std::initializer_list<Polytope> bodies) {
  return mixed_area_measure(std::span<const Polytope>(bodies.begin(), bodies.size()));
}

Rational integrate_support(const Polytope& l, const DiscreteMeasure& measure) {
  Rational s = 0;
  for (const auto& [z, w] : measure.atoms()) s += support_value(l, z) * w;
  return s / static_cast<unsigned long>(l.ambient_dim());
}

Rational mixed_volume_via_measure(const Polytope& l, std::span<const Polytope> bodies) {
  if (bodies.size() + 1 != l.ambient_dim()) throw Error(ErrorKind::BadArity, "expected n-1 bodies besides L");
  return integrate_support(l, mixed_area_measure(bodies));
}

Rational mixed_volume_via_measure(const Polytope& l, std::initializer_list<Polytope> bodies) {
  return mixed_volume_via_measure(l, std::span<const Polytope>(bodies.begin(), bodies.size()));
}

namespace {

bool exact_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  const Integer& a = q.get_num();
  const Integer& b = q.get_den();
  if (!mpz_perfect_square_p(a.get_mpz_t()) || !mpz_perfect_square_p(b.get_mpz_t())) return false;
  Integer ra, rb;
  mpz_sqrt(ra.get_mpz_t(), a.get_mpz_t());
  mpz_sqrt(rb.get_mpz_t(), b.get_mpz_t());
  root = Rational(ra, rb);
  root.canonicalize();
  return true;
}

}  // namespace

Rational segment_mixed_volume(const Vector& v, std::span<const Polytope> bodies) {
  const std::size_t n = v.size();
  if (is_zero(v)) throw Error(ErrorKind::ZeroVector, "segment direction must be nonzero");
  if (bodies.size() + 1 != n) throw Error(ErrorKind::BadArity, "expected n-1 bodies besides the segment");
  check_dimension_limit(n);
  check_tuple(bodies, n);

  std::vector<Polytope> projected;
  Rational gram;
  for (const auto& b : bodies) {
    auto proj = project_along(b, v);
    gram = proj.gram_correction;
    projected.push_back(std::move(proj.polytope));
  }
  // |v| * sqrt(gram) = |v|^2 / |v_k| is rational for this basis.
  Rational factor;
  const bool rational_factor = exact_sqrt(dot(v, v) * gram, factor);
  assert(rational_factor);
  if (!rational_factor) throw Error(ErrorKind::DegenerateInput, "projection scale factor is irrational");
  return factor * mixed_volume(std::span<const Polytope>(projected)) / static_cast<unsigned long>(n);
}

Rational segment_mixed_volume(const Vector& v, std::initializer_list<Polytope> bodies) {
  return segment_mixed_volume(v, std::span<const Polytope>(bodies.begin(), bodies.size()));
}

}  // namespace mvlab

#include "mvlab/bezout_lab.hpp"
#include "mvlab/error.hpp"
#include "mvlab/random.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace mvlab {

std::string_view to_string(SearchFamily family) {
  switch (family) {
    case SearchFamily::EdgeSegments: return "edge_segments";
    case SearchFamily::FacetMoves: return "facet_moves";
    case SearchFamily::CapCuts: return "cap_cuts";
    case SearchFamily::Random: return "random";
  }
  return "unknown";
}

namespace {

// Edge directions as primitive vectors with positive leading entry, in
// decreasing lexicographic order (so e1 precedes e2).
std::vector<Vector> edge_directions(const Polytope& k) {
  std::set<IntVector, std::greater<>> dirs;
  for (const auto& [i, j] : edges(k)) {
    IntVector d = primitive(k.vertices()[j] - k.vertices()[i]);
    const auto lead = std::find_if(d.begin(), d.end(), [](const Integer& x) { return x != 0; });
    if (*lead < 0) {
      for (auto& x : d) x = -x;
    }
    dirs.insert(std::move(d));
  }
  std::vector<Vector> out;
  for (const auto& d : dirs) out.push_back(to_rational(d));
  return out;
}

class Search {
 public:
  Search(const Polytope& k, std::size_t budget) : ctx_(k), budget_(budget) {}

  bool exhausted() const { return outcome_.evaluations >= budget_; }
  bool done() const { return outcome_.certificate.has_value() || exhausted(); }
  SearchOutcome take() { return std::move(outcome_); }

  // Returns true when the search should stop.
  bool evaluate(SearchFamily family, const Polytope& l, const Polytope& m, const DiscreteMeasure& m_measure,
                const Rational& m_with_k) {
    if (done()) return true;
    ++outcome_.evaluations;
    BezoutCertificate c = ctx_.gap(l, m, m_measure, m_with_k);
    if (c.verdict == Verdict::Violated) {
      outcome_.certificate = std::move(c);
      outcome_.family = family;
    }
    return done();
  }

  bool evaluate(SearchFamily family, const Polytope& l, const Polytope& m) {
    if (done()) return true;
    return evaluate(family, l, m, ctx_.mixed_measure(m), ctx_.mixed_with_k(m));
  }

  const BezoutContext& context() const { return ctx_; }

 private:
  BezoutContext ctx_;
  std::size_t budget_;
  SearchOutcome outcome_;
};

void search_edge_segments(Search& s, const Polytope& k, const std::vector<Vector>& dirs) {
  const Vector origin(k.ambient_dim());
  std::vector<Polytope> segs;
  std::vector<DiscreteMeasure> measures;
  std::vector<Rational> with_k;
  for (const auto& d : dirs) {
    segs.push_back(segment(origin, d));
    measures.push_back(s.context().mixed_measure(segs.back()));
    with_k.push_back(s.context().mixed_with_k(segs.back()));
  }
  // L outer, M inner
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = 0; j < segs.size(); ++j) {
      if (j == i) continue;
      if (s.evaluate(SearchFamily::EdgeSegments, segs[i], segs[j], measures[j], with_k[j])) return;
    }
  }
}

void search_facet_moves(Search& s, const Polytope& k) {
  std::vector<Polytope> moved;
  for (std::size_t i = 0; i < k.facets().size(); ++i) {
    const MoveRange range = safe_move_range(k, i);
    moved.push_back(shift_facet(k, i, range.t_max / 2));
    moved.push_back(shift_facet(k, i, range.t_min / 2));
  }
  for (const auto& m : moved) {
    if (s.done()) return;
    const DiscreteMeasure mm = s.context().mixed_measure(m);
    const Rational mk = s.context().mixed_with_k(m);
    for (const auto& l : moved) {
      if (s.evaluate(SearchFamily::FacetMoves, l, m, mm, mk)) return;
    }
  }
}

void search_cap_cuts(Search& s, const Polytope& k, const std::vector<Vector>& dirs) {
  const std::size_t n = k.ambient_dim();
  std::vector<PrimitiveNormal> caps = facet_normals(k);
  Vector centroid(n);
  for (const auto& v : k.vertices()) centroid = centroid + v;
  centroid = Rational(1, static_cast<unsigned long>(k.vertex_count())) * centroid;
  for (const auto& v : k.vertices()) {
    const Vector d = v - centroid;
    if (is_zero(d)) continue;
    auto z = PrimitiveNormal::from_direction(d);
    if (std::find(caps.begin(), caps.end(), z) == caps.end()) caps.push_back(std::move(z));
  }

  for (const auto& z : caps) {
    const Rational width = support_value(k, z) + support_value(k, -z);
    for (const Rational& fraction : {Rational(1, 16), Rational(1, 4), Rational(1, 2)}) {
      Polytope m;
      try {
        m = cap_cut(k, z, fraction * width);
      } catch (const Error&) {
        continue;
      }
      if (support_drop_set(k, m).empty()) continue;
      std::vector<Vector> vs{z.as_vector()};
      vs.insert(vs.end(), dirs.begin(), dirs.end());
      for (const auto& v : vs) {
        if (!projection_preserved(k, m, v)) continue;
        if (s.evaluate(SearchFamily::CapCuts, segment(Rational(-1) * v, v), m)) return;
      }
    }
  }
}

Polytope random_body(Rng& rng, std::size_t n) {
  while (true) {
    const std::size_t count = static_cast<std::size_t>(rng.uniform(2, static_cast<std::int64_t>(n) + 3));
    std::vector<Vector> pts;
    for (std::size_t i = 0; i < count; ++i) {
      Vector v(n);
      for (auto& x : v) x = rng.uniform(-3, 3);
      pts.push_back(std::move(v));
    }
    Polytope p = Polytope::from_points(std::move(pts), n);
    if (p.affine_dim() >= 1) return p;
  }
}

void search_random(Search& s, const Polytope& k, std::uint64_t seed) {
  Rng rng(seed);
  while (!s.done()) {
    const Polytope l = random_body(rng, k.ambient_dim());
    const Polytope m = random_body(rng, k.ambient_dim());
    s.evaluate(SearchFamily::Random, l, m);
  }
}

}  // namespace

SearchOutcome counterexample_search(const Polytope& k, std::size_t budget, std::uint64_t seed) {
  Search s(k, budget);
  const auto dirs = edge_directions(k);
  search_edge_segments(s, k, dirs);
  if (!s.done()) search_facet_moves(s, k);
  if (!s.done()) search_cap_cuts(s, k, dirs);
  if (!s.done()) search_random(s, k, seed);
  return s.take();
}

}  // namespace mvlab

#include "mvlab/cli/commands.hpp"

#include "mvlab/bezout_lab.hpp"
#include "mvlab/cli/generators.hpp"
#include "mvlab/error.hpp"
#include "mvlab/mixed_volume.hpp"
#include "mvlab/random.hpp"
#include "mvlab/rational.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace mvlab::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string decimal(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", q.get_d());
  return buf;
}

// Writes results both into the JSON tree and into the flat CSV view.
class Results {
 public:
  explicit Results(CommandResult& r) : r_(r) { r_.report["results"] = Json::object(); }

  void put(const std::string& path, Json value) {
    r_.rows.push_back({path, value.is_string() ? value.get<std::string>() : value.dump(), ""});
    r_.report["results"][Json::json_pointer("/" + path)] = std::move(value);
  }
  void put_q(const std::string& path, const Rational& q) {
    r_.rows.push_back({path, to_string(q), decimal(q)});
    r_.report["results"][Json::json_pointer("/" + path)] = rational_to_json(q);
  }
  void put_polytope(const std::string& path, const Polytope& p) {
    Json doc = serialize_polytope(p);
    r_.rows.push_back({path, doc.dump(), ""});
    r_.report["results"][Json::json_pointer("/" + path)] = std::move(doc);
  }

 private:
  CommandResult& r_;
};

bool is_simplex(const Polytope& k) { return k.full_dimensional() && k.vertex_count() == k.ambient_dim() + 1; }

std::string verdict_name(Verdict v) { return v == Verdict::Satisfied ? "satisfied" : "violated"; }

Json normals_json(const std::vector<PrimitiveNormal>& zs) {
  Json out = Json::array();
  for (const auto& z : zs) out.push_back(normal_to_json(z));
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

Vector parse_vector(const std::string& s, std::size_t n, const char* what) {
  const auto parts = split(s, ',');
  if (parts.size() != n) throw UsageError(std::string(what) + ": expected " + std::to_string(n) + " comma-separated entries");
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      v[i] = parse_rational(parts[i]);
    } catch (const Error&) {
      throw UsageError(std::string(what) + ": bad entry '" + parts[i] + "'");
    }
  }
  return v;
}

void expect_bodies(const std::vector<Polytope>& bodies, std::size_t count, const std::string& command) {
  if (bodies.size() != count) {
    throw UsageError(command + ": expected " + std::to_string(count) + " bod" + (count == 1 ? "y" : "ies") + ", got " +
                     std::to_string(bodies.size()));
  }
}

// Random body with 2..n+2 integer points in [-4, 4]^n, never a single point.
Polytope fuzz_body(Rng& rng, std::size_t n) {
  while (true) {
    const auto count = static_cast<std::size_t>(rng.uniform(2, static_cast<std::int64_t>(n) + 2));
    std::vector<Vector> pts(count, Vector(n));
    for (auto& p : pts) {
      for (auto& c : p) c = rng.uniform(-4, 4);
    }
    Polytope p = Polytope::from_points(std::move(pts), n);
    if (p.affine_dim() >= 1) return p;
  }
}

// --- commands -------------------------------------------------------------

int cmd_mv(const ExperimentConfig&, const std::vector<Polytope>& bodies, Results& out) {
  if (bodies.empty()) throw UsageError("mv: expected at least one body");
  const std::size_t n = bodies.front().ambient_dim();
  if (bodies.size() > n) throw UsageError("mv: at most n bodies (the last one is repeated to fill n slots)");
  std::vector<Polytope> tuple = bodies;
  while (tuple.size() < n) tuple.push_back(bodies.back());
  const Rational pol = mixed_volume(std::span<const Polytope>(tuple));
  const Rational mea = mixed_volume_via_measure(tuple.front(), std::span<const Polytope>(tuple).subspan(1));
  out.put("n", n);
  out.put_q("mixed_volume", pol);
  out.put_q("mixed_volume_measure", mea);
  out.put("routes_agree", pol == mea);
  return pol == mea ? 0 : 1;
}

int cmd_bezout(const ExperimentConfig& cfg, const std::vector<Polytope>& bodies, Results& out) {
  const std::size_t r = cfg.r.value_or(2);
  expect_bodies(bodies, r + 1, "bezout");
  const Polytope& k = bodies.back();
  Rational gap, gap_pol;
  bool equality = false;
  if (r == 2) {
    const auto cert = bezout_gap(bodies[0], bodies[1], k, Route::Measure);
    gap = cert.gap;
    equality = cert.equality;
    gap_pol = bezout_gap(bodies[0], bodies[1], k, Route::Polarization).gap;
  } else {
    const std::vector<Polytope> tuple(bodies.begin(), bodies.end() - 1);
    gap = bezout_gap_general(tuple, k, r, Route::Measure);
    gap_pol = bezout_gap_general(tuple, k, r, Route::Polarization);
    equality = gap == 0;
  }
  const bool violated = gap < 0;
  out.put("r", r);
  out.put_q("gap", gap);
  out.put_q("gap_polarization", gap_pol);
  out.put("routes_agree", gap == gap_pol);
  out.put("verdict", violated ? "violated" : "satisfied");
  out.put("equality", equality);
  out.put("k_is_simplex", is_simplex(k));
  return (gap != gap_pol || (violated && is_simplex(k))) ? 1 : 0;
}

int cmd_audit(const ExperimentConfig&, const std::vector<Polytope>& bodies, Results& out) {
  expect_bodies(bodies, 1, "audit");
  const AuditReport report = simplex_audit(bodies[0]);
  for (std::size_t i = 0; i < report.facets.size(); ++i) {
    const auto& f = report.facets[i];
    const std::string base = "facets/" + std::to_string(i) + "/";
    out.put(base + "facet_index", f.facet_index);
    out.put(base + "normal", normal_to_json(bodies[0].facets()[f.facet_index].normal));
    out.put_q(base + "t", f.t);
    out.put(base + "proportional", f.proportional);
    if (f.lambda) {
      out.put_q(base + "lambda", *f.lambda);
    } else {
      out.put(base + "lambda", nullptr);
    }
    out.put(base + "confirmed", f.confirmed);
  }
  out.put("simplex", report.simplex);
  out.put("vertex_count_is_simplex", report.vertex_count_is_simplex);
  out.put("consistent", report.consistent());
  return report.consistent() ? 0 : 1;
}

int cmd_search(const ExperimentConfig& cfg, const std::vector<Polytope>& bodies, Results& out) {
  expect_bodies(bodies, 1, "search");
  const Polytope& k = bodies[0];
  const SearchOutcome res = counterexample_search(k, cfg.budget, cfg.seed);
  out.put("budget", cfg.budget);
  out.put("evaluations", res.evaluations);
  out.put("budget_exhausted", res.budget_exhausted());
  out.put("k_is_simplex", is_simplex(k));
  if (res.certificate) {
    out.put("family", std::string(to_string(*res.family)));
    out.put_q("certificate/gap", res.certificate->gap);
    out.put("certificate/verdict", verdict_name(res.certificate->verdict));
    out.put_polytope("certificate/l", res.certificate->l);
    out.put_polytope("certificate/m", res.certificate->m);
  } else {
    out.put("certificate", nullptr);
  }
  const bool found = res.certificate.has_value();
  return found == !is_simplex(k) ? 0 : 1;
}

int cmd_strict(const ExperimentConfig& cfg, const std::vector<Polytope>& bodies, Results& out) {
  expect_bodies(bodies, 1, "strict");
  const Polytope& k = bodies[0];
  const std::size_t n = k.ambient_dim();
  if (!cfg.direction) throw UsageError("strict: --dir is required");
  const Vector zdir = parse_vector(*cfg.direction, n, "--dir");
  const PrimitiveNormal z = PrimitiveNormal::from_direction(zdir);
  Rational depth;
  try {
    depth = parse_rational(cfg.depth);
  } catch (const Error&) {
    throw UsageError("--depth: not a rational: '" + cfg.depth + "'");
  }
  const Vector v = cfg.v_direction ? parse_vector(*cfg.v_direction, n, "--vdir") : z.as_vector();

  const StrictPointExperiment e = strict_point_experiment(k, z, depth, v);
  out.put("cap_direction", normal_to_json(e.cap_direction));
  out.put_q("depth", e.depth);
  out.put("v", vector_to_json(e.v));
  out.put("projection_preserved", e.projection_preserved);
  out.put("support_drop_set", normals_json(e.drop_set));
  out.put_q("max_sagitta", e.max_sagitta);
  out.put("depth_clears_sagitta", e.depth_clears_sagitta);
  out.put("mechanism_active", e.mechanism_active());
  out.put("cap_vertex_count", e.cap.vertex_count());
  out.put_q("gap", e.certificate.gap);
  out.put("verdict", verdict_name(e.certificate.verdict));
  out.put("k_is_simplex", is_simplex(k));
  const bool violated = e.certificate.gap < 0;
  return ((e.mechanism_active() && !violated) || (violated && is_simplex(k))) ? 1 : 0;
}

int cmd_af_fuzz(const ExperimentConfig& cfg, const std::vector<Polytope>& bodies, Results& out) {
  if (!bodies.empty()) throw UsageError("af-fuzz: takes no bodies, use --dim");
  const std::size_t n = cfg.dim;
  if (n < 2) throw UsageError("af-fuzz: --dim must be at least 2");
  check_dimension_limit(n);
  Rng rng(cfg.seed);
  std::size_t negatives = 0, zeros = 0;
  std::optional<Rational> lo;
  std::string transcript;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Polytope l = fuzz_body(rng, n);
    const Polytope m = fuzz_body(rng, n);
    std::vector<Polytope> rest;
    for (std::size_t j = 2; j < n; ++j) rest.push_back(fuzz_body(rng, n));
    const Rational value = af_spot_check(l, m, rest);
    if (value < 0) {
      if (negatives == 0) {
        out.put_polytope("first_negative/l", l);
        out.put_polytope("first_negative/m", m);
        out.put_q("first_negative/value", value);
      }
      ++negatives;
    }
    if (value == 0) ++zeros;
    if (!lo || value < *lo) lo = value;
    transcript += to_string(value) + "\n";
  }
  out.put("dim", n);
  out.put("samples", cfg.samples);
  out.put("negatives", negatives);
  out.put("zeros", zeros);
  if (lo) out.put_q("min", *lo);
  out.put("values_sha256", sha256_hex(transcript));
  return negatives == 0 ? 0 : 1;
}

using Handler = std::function<int(const ExperimentConfig&, const std::vector<Polytope>&, Results&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"mv", cmd_mv},         {"bezout", cmd_bezout}, {"audit", cmd_audit},
      {"search", cmd_search}, {"strict", cmd_strict}, {"af-fuzz", cmd_af_fuzz},
  };
  return h;
}

Json usage_error_json(const std::string& msg) { return Json{{"kind", "UsageError"}, {"message", msg}}; }

}  // namespace

std::string BodySource::label() const { return (kind == Kind::File ? "file:" : "gen:") + value; }

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"mv", "bezout", "audit", "search", "strict", "af-fuzz", "gen"};
  return names;
}

CommandResult run_command(const ExperimentConfig& config) {
  CommandResult result;
  Json& rep = result.report;
  rep["command"] = config.command;
  rep["argv"] = config.argv;
  rep["seed"] = config.seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto it = handlers().find(config.command);
    if (it == handlers().end()) throw UsageError("unknown command '" + config.command + "'");
    std::vector<Polytope> bodies;
    rep["inputs"] = Json::array();
    for (const auto& src : config.bodies) {
      Polytope p = src.kind == BodySource::Kind::File ? load_polytope(src.value) : generate(src.value);
      rep["inputs"].push_back({{"source", src.label()},
                               {"dim", p.ambient_dim()},
                               {"vertex_count", p.vertex_count()},
                               {"sha256", sha256_hex(serialize_polytope(p).dump())}});
      bodies.push_back(std::move(p));
    }
    Results out(result);
    result.exit_code = it->second(config, bodies, out);
    rep["status"] = result.exit_code == 0 ? "expected" : "unexpected";
  } catch (const UsageError& e) {
    result.exit_code = 2;
    rep["status"] = "error";
    rep["error"] = usage_error_json(e.what());
  } catch (const Error& e) {
    result.exit_code = 2;
    rep["status"] = "error";
    rep["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  rep["timing"] = {{"wall_seconds", elapsed.count()}};
  return result;
}

std::string to_csv(const CommandResult& result) {
  auto esc = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) {
      if (c == '"') o += '"';
      o += c;
    }
    return o + "\"";
  };
  std::string out = "# decimal column is lossy; the JSON report is authoritative\n";
  out += "key,exact,decimal\n";
  out += "command," + esc(result.report.value("command", "")) + ",\n";
  out += "status," + esc(result.report.value("status", "")) + ",\n";
  for (const auto& row : result.rows) out += esc(row.key) + "," + esc(row.exact) + "," + row.decimal + "\n";
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mvlab: exact mixed volumes and Bezout-inequality experiments"};
  app.name("mvlab");
  ExperimentConfig cfg;
  std::vector<std::string> inputs, gens;
  std::string format = "json";
  std::string command;
  std::string out_path;
  app.add_option("command", command, "mv | bezout | audit | search | strict | af-fuzz | gen")
      ->required()
      ->check(CLI::IsMember(command_names()));
  auto* in_opt = app.add_option("--input", inputs, "PolytopeDocument JSON file (repeatable)");
  auto* gen_opt = app.add_option("--gen", gens, "generator KIND:PARAMS, e.g. cube:3 (repeatable)");
  app.add_option("--r", cfg.r, "arity of the Bezout inequality (bezout)");
  app.add_option("--budget", cfg.budget, "gap evaluations (search)");
  app.add_option("--seed", cfg.seed, "seed for randomized commands");
  app.add_option("--samples", cfg.samples, "instances (af-fuzz)");
  app.add_option("--dim", cfg.dim, "dimension (af-fuzz)");
  app.add_option("--dir", cfg.direction, "cap normal, comma-separated (strict)");
  app.add_option("--depth", cfg.depth, "cap depth as a rational (strict)");
  app.add_option("--vdir", cfg.v_direction, "segment direction v, defaults to --dir (strict)");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "mvlab: " << e.what() << "\n";
    return 2;
  }

  cfg.command = command;
  cfg.argv = args;
  cfg.format = format == "csv" ? Format::Csv : Format::Json;
  if (!out_path.empty()) cfg.out = out_path;
  std::size_t ii = 0, gi = 0;  // keep bodies in command-line order
  for (const CLI::Option* opt : app.parse_order()) {
    if (opt == in_opt) cfg.bodies.push_back({BodySource::Kind::File, inputs.at(ii++)});
    if (opt == gen_opt) cfg.bodies.push_back({BodySource::Kind::Generator, gens.at(gi++)});
  }

  std::string text;
  int code = 0;
  if (command == "gen") {
    try {
      if (cfg.bodies.size() != 1) throw UsageError("gen: expected exactly one --gen or --input");
      const auto& src = cfg.bodies[0];
      const Polytope p = src.kind == BodySource::Kind::File ? load_polytope(src.value) : generate(src.value);
      text = serialize_polytope(p, src.value).dump(2) + "\n";
    } catch (const std::exception& e) {
      err << "mvlab: " << e.what() << "\n";
      return 2;
    }
  } else {
    const CommandResult res = run_command(cfg);
    code = res.exit_code;
    text = cfg.format == Format::Csv ? to_csv(res) : res.report.dump(2) + "\n";
    if (res.report.contains("error")) err << "mvlab: " << res.report["error"]["message"].get<std::string>() << "\n";
  }

  if (cfg.out) {
    std::ofstream f(*cfg.out, std::ios::binary);
    if (!f) {
      err << "mvlab: cannot write " << *cfg.out << "\n";
      return 2;
    }
    f << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace mvlab::cli

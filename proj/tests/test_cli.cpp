#include "doctest.h"

#include "mvlab/bezout_lab.hpp"
#include "mvlab/cli/commands.hpp"
#include "mvlab/cli/document.hpp"
#include "mvlab/cli/generators.hpp"
#include "mvlab/error.hpp"
#include "test_support.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mvlab;
using namespace mvlab::cli;
using mvlab::testing::q;
using mvlab::testing::vec;

namespace {

ExperimentConfig config(std::string command, std::vector<std::string> gens) {
  ExperimentConfig c;
  c.command = std::move(command);
  for (auto& g : gens) c.bodies.push_back({BodySource::Kind::Generator, std::move(g)});
  return c;
}

Rational result_q(const CommandResult& r, const std::string& path) {
  return rational_from_json(r.report["results"][Json::json_pointer(path)], path);
}

Json without_timing(Json report) {
  report.erase("timing");
  return report;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mvlab_test_" + name)).string();
}

ErrorKind error_kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected mvlab::Error");
  return ErrorKind::BadParams;
}

// regression constant: strict-point experiment on regular_polygon(64, 10^6),
// cap normal (1,0), depth 1/10, v = (1,0)
const Rational kPolygon64Gap(
    "-50147947404272050988691846280296952283183124319713450503201/"
    "1708015192770678167938512793600142796012432962616734887072050");

}  // namespace

TEST_CASE("generator examples") {
  CHECK(generate("simplex:3") == testing::standard_simplex(3));
  CHECK(generate("cube:2") == testing::unit_cube(2));
  CHECK(generate("cross_polytope", {"3"}) == testing::cross_polytope(3));
  CHECK(generate("segment:1,0") == testing::unit_segment(2, 0));

  const auto prism = generate("prism:3,2");
  CHECK(prism.vertex_count() == 6);
  CHECK(volume(prism) == 1);

  const auto trunc = generate("truncated_simplex:3,1/4");
  CHECK(trunc.vertex_count() == 6);
  CHECK(volume(trunc) == q(1, 6) - q(1, 6 * 64));

  const auto poly = generate("regular_polygon:64,10^6");
  REQUIRE(poly.vertex_count() == 64);
  for (const auto& v : poly.vertices()) {
    CHECK(v[0].get_den() <= 1000000);
    CHECK(v[1].get_den() <= 1000000);
    CHECK(std::abs(v[0].get_d() * v[0].get_d() + v[1].get_d() * v[1].get_d() - 1) < 1e-9);
  }
  CHECK(generate("regular_polygon:64,1000000") == poly);

  const auto ball = generate("ball_approx_3d:1,1000");
  CHECK(ball.vertex_count() == 18);
  CHECK(ball.facets().size() == 32);
  CHECK(generate("ball_approx_3d:0,1") == testing::cross_polytope(3));
}

TEST_CASE("random_hull is seeded and full-dimensional") {
  const auto a = generate("random_hull:3,8,42");
  CHECK(a.full_dimensional());
  CHECK(a == generate("random_hull:3,8,42"));
  CHECK_FALSE(a == generate("random_hull:3,8,43"));
}

TEST_CASE("generator errors") {
  CHECK(error_kind_of([] { generate("dodecahedron:3"); }) == ErrorKind::BadParams);
  CHECK(error_kind_of([] { generate("cube"); }) == ErrorKind::BadParams);
  CHECK(error_kind_of([] { generate("cube:x"); }) == ErrorKind::BadParams);
  CHECK(error_kind_of([] { generate("truncated_simplex:3,1"); }) == ErrorKind::BadParams);
  CHECK(error_kind_of([] { generate("prism:3,0"); }) == ErrorKind::BadParams);
  CHECK(error_kind_of([] { generate("regular_polygon:2,100"); }) == ErrorKind::BadParams);
  CHECK(error_kind_of([] { generate("regular_polygon:64,2"); }) == ErrorKind::BadParams);
  CHECK(error_kind_of([] { generate("random_hull:3,3,1"); }) == ErrorKind::BadParams);
  CHECK(error_kind_of([] { generate("cube:9"); }) == ErrorKind::DimensionLimit);
}

TEST_CASE("parse_polytope examples") {
  const auto tri = parse_polytope_text(R"({"dim":2,"vertices":[[[0,1],[0,1]],[[1,1],[0,1]],[[0,1],[1,1]]]})");
  CHECK(tri == testing::standard_simplex(2));

  CHECK(error_kind_of([] { parse_polytope_text(R"({"dim":1,"vertices":[[[1,0]]]})"); }) == ErrorKind::ParseError);
  CHECK(error_kind_of([] { parse_polytope_text(R"({"dim":1,"vertices":[[[1,-2]]]})"); }) == ErrorKind::ParseError);
  CHECK(error_kind_of([] { parse_polytope_text(R"({"dim":2,"vertices":[[[1,1]]]})"); }) == ErrorKind::ParseError);
  CHECK(error_kind_of([] { parse_polytope_text(R"({"vertices":[]})"); }) == ErrorKind::ParseError);
  CHECK(error_kind_of([] { parse_polytope_text(R"({"dim":1,"vertices":[[["x",1]]]})"); }) == ErrorKind::ParseError);

  try {
    parse_polytope_text("{\"dim\": 2,\n \"vertices\": [[[0,1],[0,1]],\n [[1,1] [0,1]]]}");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    parse_polytope_text(R"({"dim":2,"vertices":[[[0,1],[0,1]],[[1,1],[0,0]]]})");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("vertices[1][1][1]") != std::string::npos);
  }
}

TEST_CASE("serialize(parse(d)) == canonicalize(d)") {
  const Json messy = Json::parse(
      R"({"dim":2,"name":"sq","vertices":[[[2,2],[4,2]],[[0,3],[0,5]],[[0,1],[2,2]],[[3,3],[0,7]],[[1,2],[1,2]]]})");
  const Json canon = canonicalize(messy);
  CHECK(canon == Json::parse(
                     R"({"dim":2,"name":"sq","vertices":[[[0,1],[0,1]],[[0,1],[1,1]],[[1,1],[0,1]],[[1,1],[2,1]]]})"));
  CHECK(canonicalize(canon) == canon);

  std::mt19937_64 rng(50);
  for (int i = 0; i < 20; ++i) {
    const auto p = testing::random_polytope(rng, 3, 6);
    const Json doc = serialize_polytope(p);
    CHECK(parse_polytope(doc) == p);
    CHECK(parse_polytope_text(doc.dump()) == p);
  }
}

TEST_CASE("integers outside int64 travel as strings") {
  const Rational big("123456789012345678901234567891/7");
  const Json j = rational_to_json(big);
  CHECK(j[0].is_string());
  CHECK(j[1] == 7);
  CHECK(rational_from_json(j, "x") == big);
  CHECK(rational_from_json(Json::parse(R"(["-5", 10])"), "x") == q(-1, 2));
  const Polytope p = Polytope::from_points({vec({big}), vec({0})}, 1);
  CHECK(parse_polytope_text(serialize_polytope(p).dump()) == p);
}

TEST_CASE("cmd_bezout examples") {
  auto r = run_command(config("bezout", {"segment:1,0", "segment:0,1", "simplex:2"}));
  CHECK(r.exit_code == 0);
  CHECK(result_q(r, "/gap") == 0);
  CHECK(r.report["results"]["equality"] == true);
  CHECK(r.report["results"]["verdict"] == "satisfied");

  auto sq = run_command(config("bezout", {"segment:1,0", "segment:0,1", "cube:2"}));
  CHECK(sq.exit_code == 0);  // a violation on a non-simplex contradicts nothing
  CHECK(result_q(sq, "/gap") == q(-1, 4));
  CHECK(sq.report["results"]["verdict"] == "violated");

  auto c = config("bezout", {"segment:1,0,0", "segment:0,1,0", "segment:0,0,1", "cube:3"});
  c.r = 3;
  auto r3 = run_command(c);
  CHECK(r3.exit_code == 0);
  CHECK(result_q(r3, "/gap") == q(-7, 54));
  CHECK(result_q(r3, "/gap_polarization") == q(-7, 54));
}

TEST_CASE("cmd_search examples and exit codes") {
  auto cube = config("search", {"cube:3"});
  cube.budget = 1000;
  auto r = run_command(cube);
  CHECK(r.exit_code == 0);
  CHECK(result_q(r, "/certificate/gap") <= q(-1, 18));
  const Polytope l = parse_polytope(r.report["results"]["certificate"]["l"]);
  const Polytope m = parse_polytope(r.report["results"]["certificate"]["m"]);
  CHECK(bezout_gap(l, m, testing::unit_cube(3)).gap == result_q(r, "/certificate/gap"));

  auto tri = config("search", {"simplex:2"});
  tri.budget = 200;
  auto t = run_command(tri);
  CHECK(t.exit_code == 0);
  CHECK(t.report["results"]["budget_exhausted"] == true);
  CHECK(t.report["results"]["certificate"].is_null());

  auto starved = config("search", {"cube:2"});
  starved.budget = 0;
  CHECK(run_command(starved).exit_code == 1);  // non-simplex left unrefuted
}

TEST_CASE("cmd_strict: 64-gon gap is pinned, square evades") {
  auto c = config("strict", {"regular_polygon:64,10^6"});
  c.direction = "1,0";
  c.depth = "1/10";
  auto r = run_command(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["projection_preserved"] == true);
  CHECK(r.report["results"]["support_drop_set"].size() >= 2);
  CHECK(result_q(r, "/gap") == kPolygon64Gap);

  auto s = config("strict", {"cube:2"});
  s.direction = "1,1";
  auto sq = run_command(s);
  CHECK(sq.exit_code == 0);
  CHECK(sq.report["results"]["support_drop_set"].empty());
  CHECK(result_q(sq, "/gap") == 0);

  auto missing = config("strict", {"cube:2"});
  CHECK(run_command(missing).exit_code == 2);
}

TEST_CASE("cmd_audit, cmd_mv, cmd_af_fuzz") {
  auto a = run_command(config("audit", {"simplex:3"}));
  CHECK(a.exit_code == 0);
  CHECK(a.report["results"]["simplex"] == true);
  CHECK(a.report["results"]["facets"].size() == 4);
  auto b = run_command(config("audit", {"prism:3,1"}));
  CHECK(b.exit_code == 0);
  CHECK(b.report["results"]["simplex"] == false);

  auto mv = run_command(config("mv", {"segment:1,0,0", "segment:0,1,0", "cube:3"}));
  CHECK(mv.exit_code == 0);
  CHECK(result_q(mv, "/mixed_volume") == q(1, 6));
  CHECK(mv.report["results"]["routes_agree"] == true);
  CHECK(result_q(run_command(config("mv", {"cross_polytope:3"})), "/mixed_volume") == q(4, 3));

  auto af = config("af-fuzz", {});
  af.samples = 40;
  af.dim = 3;
  af.seed = 3;
  auto f = run_command(af);
  CHECK(f.exit_code == 0);
  CHECK(f.report["results"]["negatives"] == 0);
  CHECK(result_q(f, "/min") >= 0);
}

TEST_CASE("operation and usage errors exit with 2") {
  auto flat = run_command(config("bezout", {"segment:1,0", "segment:0,1", "segment:1,1"}));
  CHECK(flat.exit_code == 2);
  CHECK(flat.report["status"] == "error");
  CHECK(flat.report["error"]["kind"].is_string());

  CHECK(run_command(config("bezout", {"cube:2"})).exit_code == 2);
  CHECK(run_command(config("nope", {})).exit_code == 2);
  auto bad_gen = run_command(config("audit", {"cube:x"}));
  CHECK(bad_gen.exit_code == 2);
  CHECK(bad_gen.report["error"]["kind"] == "BadParams");
  auto c = config("audit", {});
  c.bodies.push_back({BodySource::Kind::File, "/nonexistent/p.json"});
  auto missing = run_command(c);
  CHECK(missing.exit_code == 2);
  CHECK(missing.report["error"]["kind"] == "ParseError");
}

TEST_CASE("reports are deterministic apart from timing") {
  auto c = config("search", {"random_hull:2,6,7"});
  c.seed = 11;
  c.budget = 300;
  CHECK(without_timing(run_command(c).report).dump() == without_timing(run_command(c).report).dump());
  auto af = config("af-fuzz", {});
  af.seed = 5;
  af.samples = 20;
  af.dim = 2;
  CHECK(without_timing(run_command(af).report).dump() == without_timing(run_command(af).report).dump());
  af.seed = 6;
  CHECK(run_command(af).report["results"]["values_sha256"] !=
        run_command(config("af-fuzz", {})).report["results"]["values_sha256"]);
}

TEST_CASE("csv output keeps exact values and flags decimals as lossy") {
  auto r = run_command(config("bezout", {"segment:1,0", "segment:0,1", "cube:2"}));
  const std::string csv = to_csv(r);
  CHECK(csv.find("lossy") != std::string::npos);
  CHECK(csv.find("\ngap,-1/4,-0.25\n") != std::string::npos);
  CHECK(csv.find("\nverdict,violated,\n") != std::string::npos);
}

TEST_CASE("run_cli: body order, --out, exit codes") {
  const std::string doc_path = temp_path("seg.json");
  {
    std::ofstream f(doc_path);
    f << serialize_polytope(testing::unit_segment(2, 1)).dump();
  }
  std::ostringstream out, err;
  // L from --gen, M from --input, K from --gen: order follows the command line
  int code = run_cli({"bezout", "--gen", "segment:1,0", "--input", doc_path, "--gen", "cube:2"}, out, err);
  CHECK(code == 0);
  const Json rep = Json::parse(out.str());
  CHECK(rep["inputs"][1]["source"] == "file:" + doc_path);
  CHECK(rep["inputs"][2]["source"] == "gen:cube:2");
  CHECK(rational_from_json(rep["results"]["gap"], "gap") == q(-1, 4));

  const std::string report_path = temp_path("report.csv");
  std::ostringstream out2;
  CHECK(run_cli({"mv", "--gen", "cube:2", "--format", "csv", "--out", report_path}, out2, err) == 0);
  CHECK(out2.str().empty());
  std::ifstream in(report_path);
  std::stringstream got;
  got << in.rdbuf();
  CHECK(got.str().find("mixed_volume,1,1") != std::string::npos);

  std::ostringstream sink;
  CHECK(run_cli({"bezout", "--bogus"}, sink, sink) == 2);
  CHECK(run_cli({"frobnicate"}, sink, sink) == 2);
  CHECK(run_cli({"mv", "--gen", "cube:2", "--format", "xml"}, sink, sink) == 2);
  CHECK(run_cli({"--help"}, sink, sink) == 0);

  std::ostringstream gen_out;
  CHECK(run_cli({"gen", "--gen", "simplex:2"}, gen_out, err) == 0);
  CHECK(parse_polytope_text(gen_out.str()) == testing::standard_simplex(2));

  std::filesystem::remove(doc_path);
  std::filesystem::remove(report_path);
}

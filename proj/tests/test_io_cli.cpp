#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "tdsharp/cli.hpp"
#include "tdsharp/io.hpp"

using namespace tdsharp;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("tdsharp_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& name) const { return path / name; }
};

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

Instance instance_of(const MatrixPair& pair) { return {pair.A.field(), pair.A, pair.Astar, Json::object()}; }

Field q_sqrt2() {
  const Field q = Field::rational();
  return Field::extension(q, {q.from_int(-2), q.zero(), q.one()});
}

}  // namespace

TEST_CASE("field and scalar JSON round trips") {
  for (const Field& f : {gf(7), gf(3, 2), gf(2, 3), Field::rational(), q_sqrt2()}) {
    const Field back = field_from_json(field_to_json(f));
    CHECK(back == f);
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
      const Scalar s = random_scalar(f, rng);
      CHECK(scalar_from_json(f, scalar_to_json(f, s)) == s);
    }
  }
  CHECK(scalar_to_json(gf(7), gf(7).from_int(3)) == Json(3));
  CHECK(scalar_to_json(Field::rational(), Field::rational().from_rational(mpq_class(-3, 4))) == Json("-3/4"));
  CHECK(scalar_from_json(Field::rational(), Json(5)) == Field::rational().from_int(5));
  CHECK(scalar_to_json(gf(3, 2), gf(3, 2).generator()) == Json::parse("[0,1]"));

  const Json q2 = field_to_json(q_sqrt2());
  CHECK(q2["kind"] == "extension");
  CHECK(q2["p"] == 0);
  CHECK(q2["modulus"] == Json::parse(R"(["-2/1","0/1","1/1"])"));
}

TEST_CASE("scalar and matrix parse errors") {
  CHECK_THROWS_AS(scalar_from_json(gf(2), Json(2)), FieldError);
  try {
    scalar_from_json(gf(2), Json(2));
  } catch (const FieldError& e) {
    CHECK(std::string(e.what()) == "coefficient out of range for p=2");
  }
  CHECK_THROWS_AS(scalar_from_json(Field::rational(), Json("1/0")), ParseError);
  CHECK_THROWS_AS(scalar_from_json(Field::rational(), Json("x")), ParseError);
  CHECK_THROWS_AS(scalar_from_json(gf(3, 2), Json(1)), ParseError);
  CHECK_THROWS_AS(matrix_from_json(gf(5), Json::parse("[[1,2],[3,4],[5,6]]"), "A"), DimensionError);
  CHECK_THROWS_AS(matrix_from_json(gf(5), Json::parse("[[1,2],[3]]"), "A"), ParseError);
  try {
    matrix_from_json(gf(5), Json::parse("[[1,2],[3,7]]"), "A");
    FAIL("expected an error");
  } catch (const FieldError& e) {
    CHECK(std::string(e.what()).find("A[1][1]") == 0);
  }
}

TEST_CASE("instance parse errors") {
  CHECK_THROWS_AS(parse_instance_text("not json"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("[]"), ParseError);
  CHECK_THROWS_AS(parse_instance_text(R"({"version":2})"), ParseError);
  CHECK_THROWS_AS(parse_instance_text(R"({"version":1,"field":{"kind":"prime","p":5,"k":1},"A":[[1]]})"), ParseError);
  CHECK_THROWS_AS(
      parse_instance_text(R"({"version":1,"field":{"kind":"prime","p":5,"k":1},"A":[[1]],"Astar":[[1,0],[0,1]]})"),
      DimensionError);
  CHECK_THROWS(parse_instance_text(R"({"version":1,"field":{"kind":"prime","p":6,"k":1},"A":[[1]],"Astar":[[1]]})"));
  CHECK_THROWS_AS(load_instance("/nonexistent/instance.json"), ParseError);
}

TEST_CASE("instances round trip and emit canonically") {
  const Instance fl = instance_of(flagship());
  const std::string text = emit_instance(fl);
  const Instance back = parse_instance_text(text);
  CHECK(back.field == fl.field);
  CHECK(back.A == fl.A);
  CHECK(back.Astar == fl.Astar);
  CHECK(emit_instance(back) == text);
  CHECK(text.find(R"("A": [[0,0,0,0],[0,0,0,0],[1,0,1,0],[0,1,0,1]])") != std::string::npos);

  const auto g = generate_split(q_sqrt2(), {2, true}, SplitShape::leonard, 3);
  const Instance q = instance_of(g.pair);
  const Instance qb = parse_instance_text(emit_instance(q));
  CHECK(qb.field == q.field);
  CHECK(qb.A == q.A);
  CHECK(qb.Astar == q.Astar);
}

TEST_CASE("digest ignores provenance and tracks content") {
  Instance a = instance_of(flagship());
  const std::string d0 = instance_digest(a);
  CHECK(d0.size() == 64);
  a.provenance = {{"generator", "hand"}};
  CHECK(instance_digest(a) == d0);
  Instance b = a;
  b.A(0, 0) = b.field.one();
  CHECK(instance_digest(b) != d0);
  CHECK(instance_digest(parse_instance_text(emit_instance(a))) == d0);
}

TEST_CASE("record and certificate JSON") {
  const auto res = sharpen_pipeline(flagship().A, flagship().Astar);
  REQUIRE(res.certificate);
  const Json rec = record_to_json(res.certificate->input);
  CHECK(rec["n"] == 4);
  CHECK(rec["shape"] == Json::parse("[2,2]"));
  CHECK(rec["sharp"] == false);
  const Json cert = certificate_to_json(*res.certificate);
  CHECK(cert["T_dim"] == 8);
  CHECK(cert["rho"] == 2);
  CHECK(cert["corners"].size() == 4);
  CHECK(cert["failed"].is_null());
  for (const auto& name : lemma_names()) CHECK(cert["lemma_passes"][name] == true);
  CHECK(cert["sharpened"]["n"] == 2);
  CHECK(cert["sharpened"]["sharp"] == true);
}

TEST_CASE("failure JSON") {
  const Field f5 = gf(5);
  const auto r = verify_td_system(ExactMatrix::from_ints(f5, {{0, 0, 0}, {0, 1, 0}, {0, 0, 2}}),
                                  ExactMatrix::from_ints(f5, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}));
  REQUIRE(r.failure);
  const Json j = failure_to_json(*r.failure);
  CHECK(j["tag"] == "no-standard-ordering-A");
  CHECK(j["graph_edges"].size() == 3);
}

TEST_CASE("atomic writes") {
  TempDir dir;
  write_file_atomic(dir / "x.json", "abc\n");
  CHECK(read_file(dir / "x.json") == "abc\n");
  write_file_atomic(dir / "x.json", "def\n");
  CHECK(read_file(dir / "x.json") == "def\n");
  CHECK_THROWS(write_file_atomic(dir / "missing" / "x.json", "x"));
}

TEST_CASE("cli generate, verify, sharpen and oracle") {
  TempDir dir;
  const std::string fl = (dir / "fl.json").string();
  auto r = cli({"generate", "twisted", "--p", "3", "--params", "0,1,0,1,1+i", "--out", fl});
  CHECK(r.code == 0);
  CHECK(parse_instance_text(read_file(fl)).A == flagship().A);

  r = cli({"verify", fl});
  CHECK(r.code == 0);
  CHECK(r.out.find("accepted d=1 n=4 shape (2,2) sharp=false") != std::string::npos);

  r = cli({"verify", fl, "--json", "-"});
  CHECK(r.code == 0);
  const Json report = Json::parse(r.out.substr(r.out.find('{')));
  CHECK(report["command"] == "verify");
  CHECK(report["outcome"] == "accepted");
  CHECK(report["digest"] == instance_digest(load_instance(fl)));
  CHECK(report["payload"]["orderings"]["A"] == 2);

  const std::string sj = (dir / "sharpen.json").string();
  r = cli({"sharpen", fl, "--json", sj});
  CHECK(r.code == 0);
  CHECK(r.out.find("T_dim=8 rho=2") != std::string::npos);
  CHECK(r.out.find("rebased n=2 shape (1,1) sharp=true") != std::string::npos);
  const Json sharpened = Json::parse(read_file(sj));
  CHECK(sharpened["outcome"] == "accepted");
  CHECK(sharpened["payload"]["rho"] == 2);

  r = cli({"oracle", "subspaces", fl});
  CHECK(r.code == 0);
  CHECK(r.out.find("agrees with Norton") != std::string::npos);
}

TEST_CASE("cli generation is byte-for-byte reproducible") {
  const auto a = cli({"generate", "split", "--p", "7", "--d", "3", "--seed", "5"});
  const auto b = cli({"generate", "split", "--p", "7", "--d", "3", "--seed", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.err.find("generated split instance") != std::string::npos);
  const auto c = cli({"generate", "split", "--p", "7", "--d", "3", "--seed", "6"});
  CHECK(c.out != a.out);
  const auto r = cli({"generate", "restrict", "--p", "3", "--k", "3", "--d", "2", "--seed", "1", "--shape", "binomial"});
  CHECK(r.code == 0);
  CHECK(parse_instance_text(r.out).A.rows() == 12);
}

TEST_CASE("cli restrict of a file") {
  TempDir dir;
  const std::string src = (dir / "seed.json").string();
  CHECK(cli({"generate", "split", "--p", "5", "--k", "2", "--d", "1", "--seed", "2", "--base-eigenvalues", "--out", src})
            .code == 0);
  const std::string out = (dir / "r.json").string();
  const auto r = cli({"generate", "restrict", src, "--out", out});
  CHECK(r.code == 0);
  const Instance inst = load_instance(out);
  CHECK(inst.A.rows() == 4);
  CHECK(inst.provenance["source_digest"] == instance_digest(load_instance(src)));
  CHECK(cli({"sharpen", out}).code == 0);
}

TEST_CASE("cli exit codes") {
  TempDir dir;
  CHECK(cli({}).code == 1);
  CHECK(cli({"verify"}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"verify", (dir / "missing.json").string()}).code == 1);
  CHECK(cli({"--help"}).code == 0);

  // x^2 + 1 over GF(3) is not diagonalizable.
  const std::string bad = (dir / "bad.json").string();
  write_file(bad, R"({"version":1,"field":{"kind":"prime","p":3,"k":1},"A":[[0,2],[1,0]],"Astar":[[0,1],[0,1]]})");
  auto r = cli({"verify", bad});
  CHECK(r.code == 2);
  CHECK(r.out.find("rejected") != std::string::npos);
  CHECK(cli({"sharpen", bad}).code == 2);

  const std::string malformed = (dir / "malformed.json").string();
  write_file(malformed, R"({"version":1,"field":{"kind":"prime","p":2,"k":1},"A":[[2]],"Astar":[[1]]})");
  r = cli({"verify", malformed});
  CHECK(r.code == 1);
  CHECK(r.err.find("coefficient out of range for p=2") != std::string::npos);

  // gamma inside GF(3) is refused before any matrix is built.
  CHECK(cli({"generate", "twisted", "--p", "3", "--params", "0,1,0,1,2"}).code == 1);
  CHECK(cli({"generate", "split", "--p", "7", "--d", "2", "--seed", "1", "--shape", "round"}).code == 1);
  CHECK(cli({"generate", "restrict", "--p", "3", "--k", "1", "--d", "1", "--seed", "1"}).code == 1);

  // Exhaustive search is limited to fields of order at most 4.
  const std::string big = (dir / "gf5.json").string();
  write_file(big, emit_instance(instance_of(sharp_pair(gf(5)))));
  CHECK(cli({"oracle", "subspaces", big}).code == 1);
}

TEST_CASE("cli trial budget from the environment") {
  TempDir dir;
  const std::string fl = (dir / "fl.json").string();
  write_file(fl, emit_instance(instance_of(flagship())));
  ::setenv("TD_TRIAL_BUDGET", "0", 1);
  CHECK(cli({"verify", fl}).code == 1);
  ::setenv("TD_TRIAL_BUDGET", "abc", 1);
  CHECK(cli({"verify", fl}).code == 1);
  ::setenv("TD_TRIAL_BUDGET", "50", 1);
  CHECK(trial_budget_from_env() == 50);
  CHECK(cli({"verify", fl}).code == 0);
  ::unsetenv("TD_TRIAL_BUDGET");
  CHECK(trial_budget_from_env(123) == 123);
}

TEST_CASE("cli batch verification") {
  TempDir dir;
  write_file(dir / "a.json", emit_instance(instance_of(flagship())));
  write_file(dir / "b.json", emit_instance(instance_of(sharp_pair(gf(5)))));
  auto r = cli({"verify", dir.path.string(), "--batch"});
  CHECK(r.code == 0);
  CHECK(r.out.find("2 files") != std::string::npos);

  write_file(dir / "c.json", R"({"version":1,"field":{"kind":"prime","p":3,"k":1},"A":[[0,2],[1,0]],"Astar":[[0,1],[0,1]]})");
  r = cli({"verify", dir.path.string(), "--batch"});
  CHECK(r.code == 2);
  write_file(dir / "d.json", "{");
  r = cli({"verify", dir.path.string(), "--batch"});
  CHECK(r.code == 2);
  CHECK(r.out.find("d.json: error") != std::string::npos);
}

TEST_CASE("cli on rational instances") {
  TempDir dir;
  const Field q = Field::rational();
  const auto g = generate_split(q, {3, false}, SplitShape::leonard, 1);
  const std::string path = (dir / "q.json").string();
  write_file(path, emit_instance(instance_of(g.pair)));
  CHECK(cli({"verify", path}).code == 0);
  CHECK(cli({"sharpen", path}).code == 0);

  const Field qi = Field::extension(q, {q.one(), q.zero(), q.one()});
  ExactMatrix Bs = ExactMatrix::from_ints(qi, {{0, 0}, {0, 1}});
  Bs(0, 1) = qi.generator();
  const MatrixPair restricted = restrict_scalars(MatrixPair{ExactMatrix::from_ints(qi, {{0, 0}, {1, 1}}), Bs});
  const std::string rp = (dir / "qi.json").string();
  write_file(rp, emit_instance(instance_of(restricted)));
  const auto r = cli({"sharpen", rp});
  CHECK(r.code == 0);
  CHECK(r.out.find("rho=2") != std::string::npos);
}

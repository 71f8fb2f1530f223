#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "jtower/pipeline.hpp"

using namespace jtower;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

PipelineResult run_example(const std::string& name, const json& params = json::object(),
                           PipelineOptions opt = {}) {
  return run_pipeline(generate_example(name, params).ext, opt);
}

bool under(const std::string& id, const std::string& prefix) {
  return id == prefix || id.rfind(prefix + ".", 0) == 0;
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("jtower_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& err = {}) {
  std::string cmd = std::string(JTOWER_CLI) + " " + args + " > /dev/null";
  cmd += err.empty() ? " 2> /dev/null" : " 2> '" + err.string() + "'";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("trivial extension passes every stage and reconstructs A = B = k") {
  PipelineResult r = run_example("trivial");
  CHECK(r.exit_code() == 0);
  CHECK(r.report.count(Status::fail) == 0);
  CHECK(r.report.count(Status::skipped) == 0);
  CHECK(r.report.passed("verdict"));
  CHECK(r.dims["A"] == 1);
  CHECK(r.dims["B"] == 1);
  REQUIRE(r.reconstruction);
  CHECK(r.reconstruction->B.dim() == 1);
  CHECK(r.report.passed("galois.galois_map"));
  CHECK(r.report.passed("galois.cleft.cocycle"));
  CHECK(r.report.passed("galois.smash_theta"));
}

TEST_CASE("skew-path runs the full pipeline and emits exactly the gated stage ids") {
  PipelineResult r = run_example("skew-path");
  CHECK(r.exit_code() == 0);
  CHECK(r.report.passed("verdict"));
  std::set<std::string> emitted, listed(gated_stage_ids().begin(), gated_stage_ids().end());
  for (const auto& c : r.report.results())
    if (under(c.id, "hopf") || under(c.id, "galois")) emitted.insert(c.id);
  for (const auto& id : emitted) CHECK_MESSAGE(listed.count(id) == 1, "not listed: " << id);
  for (const auto& id : listed) CHECK_MESSAGE(emitted.count(id) == 1, "not emitted: " << id);
}

TEST_CASE("non-irreducible group pairs skip every gated check with the hypothesis") {
  for (const json& sub : {json("A3"), json::array({0, 3})}) {
    json params = {{"subgroup", sub}};
    PipelineResult r = run_example("group-pair", params);
    CHECK(r.exit_code() == 0);
    CHECK(r.report.count(Status::fail) == 0);
    for (const auto& id : gated_stage_ids()) {
      const CheckResult* c = r.report.find(id);
      REQUIRE_MESSAGE(c, id);
      CHECK(c->status == Status::skipped);
      CHECK(c->reason.find("irreducible") != std::string::npos);
    }
    const CheckResult* v = r.report.find("verdict");
    REQUIRE(v);
    CHECK(v->status == Status::skipped);
    CHECK(v->reason.find("irreducible") != std::string::npos);
    CHECK(r.report.passed("tower.braid.e1e2e1"));
    CHECK(r.report.passed("tower.pimsner_popa.l2"));
  }
}

TEST_CASE("depth-2 verdicts differ for the normal and the non-normal subgroup") {
  PipelineResult normal = run_example("group-pair", {{"subgroup", "A3"}});
  PipelineResult other = run_example("group-pair", {{"subgroup", json::array({0, 3})}});
  REQUIRE(normal.depth_two);
  REQUIRE(other.depth_two);
  CHECK(*normal.depth_two);
  CHECK_FALSE(*other.depth_two);
}

TEST_CASE("E(1) = 3 is normalized before the tower") {
  PipelineResult r = run_example("matrix-trace");
  CHECK(r.report.passed("frobenius.normalize"));
  CHECK(r.report.passed("tower.braid.e1e2e1"));
  CHECK(r.exit_code() == 0);
}

TEST_CASE("one level stops after M_1") {
  PipelineOptions opt;
  opt.levels = 1;
  PipelineResult r = run_example("quadratic-field", json::object(), opt);
  CHECK(r.level1);
  CHECK_FALSE(r.tower);
  CHECK(r.report.passed("tower.l1.endomorphism_ring"));
  CHECK(r.report.status("tower.l2") == Status::skipped);
  CHECK(r.exit_code() == 0);
}

TEST_CASE("check filter restricts the rendered report") {
  PipelineResult r = run_example("trivial");
  json j = report_json(r, "tower.braid");
  CHECK(j["checks"].size() == 2);
  for (const auto& c : j["checks"]) CHECK(c["id"].get<std::string>().rfind("tower.braid", 0) == 0);
  CHECK(report_json(r, "tower.bra")["checks"].empty());
}

TEST_CASE("invalid inputs give exit code 2") {
  ExtensionInput ext = generate_example("quadratic-field").ext;
  ext.E.reset();
  CHECK(run_pipeline(ext).exit_code() == 2);

  ExtensionInput not_sub = generate_example("quadratic-field").ext;
  const Field& f = not_sub.M.field();
  not_sub.N = Subspace::from_basis(f, 2, {not_sub.M.basis(1)});
  not_sub.E = Matrix(f, 1, 2);
  PipelineResult r = run_pipeline(not_sub);
  CHECK(r.exit_code() == 2);
  CHECK_FALSE(r.input_valid);
}

TEST_CASE("reports are byte-identical across runs") {
  for (const auto& name : example_names()) {
    std::string a = report_json(run_example(name)).dump();
    std::string b = report_json(run_example(name)).dump();
    CHECK_MESSAGE(a == b, name);
    CHECK(report_text(run_example(name)) == report_text(run_example(name)));
  }
}

TEST_CASE("abstract pairing of k^G and k[G] yields both Hopf algebras") {
  Field f = Field::prime(7);
  Group g = symmetric_group3();
  PairingInput in{"s3", function_algebra(f, g), group_algebra(f, g), Matrix::identity(f, 6), AntipodeMode::derive,
                  std::nullopt};
  PairingResult r = run_pairing_check(in);
  CHECK(r.report.ok());
  REQUIRE(r.B);
  REQUIRE(r.A);
  CHECK(r.report.passed("hopf.axioms.S_squared"));
  CHECK(r.report.passed("hopf.dual.axioms.coassociative"));
  CHECK(pairing_report_json(r)["exit_code"] == 0);

  in.P = Matrix(f, 6, 6);
  PairingResult bad = run_pairing_check(in);
  CHECK(bad.report.status("hopf.pairing") == Status::fail);
}

TEST_CASE("cli: examples, verify and hopf on the trivial extension") {
  fs::path dir = scratch("trivial");
  fs::path file = dir / "trivial.json";
  CHECK(run_cli("examples trivial --out '" + file.string() + "'") == 0);
  CHECK(fs::exists(dir / "trivial.expected.json"));
  CHECK(run_cli("verify '" + file.string() + "'") == 0);
  CHECK(run_cli("verify --json --out '" + (dir / "r.json").string() + "' '" + file.string() + "'") == 0);
  json rep = read_json_file((dir / "r.json").string());
  CHECK(rep["format"] == "jtower-report/1");
  CHECK(rep["summary"]["fail"] == 0);
  CHECK(rep["verdict"]["status"] == "pass");

  CHECK(run_cli("hopf '" + file.string() + "' --out '" + (dir / "h").string() + "'") == 0);
  json a = read_json_file((dir / "h.A.json").string());
  json b = read_json_file((dir / "h.B.json").string());
  CHECK(a["dim"] == 1);
  CHECK(b["dim"] == 1);
}

TEST_CASE("cli: hopf on a non-irreducible extension reports irreducibility") {
  fs::path dir = scratch("s3a3");
  fs::path file = dir / "s3a3.json";
  REQUIRE(run_cli("examples group-pair --param group=S3 --param subgroup=A3 --out '" + file.string() + "'") == 0);
  CHECK(fs::exists(dir / "s3a3.expected.json"));
  CHECK(run_cli("verify '" + file.string() + "'") == 0);
  fs::path err = dir / "err.txt";
  CHECK(run_cli("hopf '" + file.string() + "' --out '" + (dir / "h").string() + "'", err) == 1);
  CHECK(slurp(err).find("irreducibility failed") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "h.A.json"));
}

TEST_CASE("cli: malformed input and unknown example exit with 2") {
  fs::path dir = scratch("bad");
  fs::path file = dir / "bad.json";
  std::ofstream(file) << R"({"format": "jtower-extension/1", "field": "Q",
    "M": {"dim": 1, "unit": ["1"], "structure": [[0, 0, 5, "1"]]},
    "N": {"dim": 1, "embedding": [["1"]]}, "E": [["1"]]})";
  CHECK(run_cli("verify '" + file.string() + "'") == 2);
  std::ofstream(dir / "garbage.json") << "{ not json";
  CHECK(run_cli("verify '" + (dir / "garbage.json").string() + "'") == 2);
  fs::path err = dir / "err.txt";
  CHECK(run_cli("examples no-such-example", err) == 2);
  CHECK(slurp(err).find("footnote-m2f2") != std::string::npos);
}

TEST_CASE("cli: example files are byte-identical across runs") {
  fs::path dir = scratch("determinism");
  CHECK(run_cli("examples footnote-m2f2 --out '" + (dir / "a.json").string() + "'") == 0);
  CHECK(run_cli("examples footnote-m2f2 --out '" + (dir / "b.json").string() + "'") == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(slurp(dir / "a.expected.json") == slurp(dir / "b.expected.json"));
}

TEST_CASE("cli: pair-check and hopf accept abstract pairing files") {
  fs::path dir = scratch("pairing");
  Field f = Field::rational();
  Group g = cyclic_group(3);
  PairingInput in{"z3", function_algebra(f, g), group_algebra(f, g), Matrix::identity(f, 3), AntipodeMode::derive,
                  std::nullopt};
  std::ofstream(dir / "p.json") << pairing_to_json(in).dump(2);
  CHECK(run_cli("pair-check '" + (dir / "p.json").string() + "'") == 0);
  CHECK(run_cli("hopf '" + (dir / "p.json").string() + "' --out '" + (dir / "z3").string() + "'") == 0);
  json b = read_json_file((dir / "z3.B.json").string());
  CHECK(b["dim"] == 3);
}

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "minorank/certificate.hpp"
#include "minorank/cli.hpp"
#include "minorank/errors.hpp"
#include "minorank/generate.hpp"
#include "minorank/json_io.hpp"
#include "minorank/rank_oracles.hpp"

using namespace minorank;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  Json report;
  std::string text;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  Json j = Json::parse(out.str(), nullptr, false);
  return {code, j, out.str()};
}

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / "minorank_cli_test";
  fs::create_directories(d);
  return d;
}

std::string write(const std::string& name, const Json& j) {
  fs::path p = scratch() / name;
  std::ofstream(p) << j.dump();
  return p.string();
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("budget command") {
  Run r = run({"budget", "--name", "F4trp", "--l", "2"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["value"] == "9830400");
  CHECK(r.report["version"] == MINORANK_VERSION);
  CHECK(r.report["input_sha256"].get<std::string>().size() == 64);
  CHECK(run({"budget", "--name", "Gpr", "--l", "9", "--d", "2"}).report["result"]["value"] == "9");
  CHECK(run({"budget", "--list"}).report["result"]["budgets"].size() >= 20);
  CHECK(run({"budget", "--name", "nope"}).code == 1);
  CHECK(run({"budget", "--name", "F4trp", "--l", "x"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"rank"}).code == 1);
  CHECK(run({"bias", "--input", "x", "--exact", "--samples", "3"}).code == 1);
  CHECK(run({"rank", "--input", "/nonexistent/file.json"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("generate is reproducible") {
  for (const std::string kind : {"random", "rank1sum", "antichain", "esupported", "diagonal", "obstruction"}) {
    std::vector<std::string> args = {"generate", "--kind", kind, "--n", "4", "--k", "2", "--seed", "11"};
    Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.text == b.text);
  }
  Run a = run({"generate", "--kind", "random", "--seed", "1"}), b = run({"generate", "--kind", "random", "--seed", "2"});
  CHECK(a.text != b.text);
  CHECK(run({"generate", "--kind", "unknown"}).code == 1);

  Json g = run({"generate", "--kind", "gowers"}).report["result"];
  CHECK(g["axes"][0].size() == 11);
  CHECK(g["axes"][1].size() == 4);
  CHECK(g["axes"][2].size() == 15);

  Json d = run({"generate", "--kind", "diagonal", "--n", "3", "--d", "3"}).report["result"];
  CHECK(d.dump() == R"({"field_order":2,"axes":[[1,2,3],[1,2,3],[1,2,3]],"entries":[[[1,1,1],1],[[2,2,2],1],[[3,3,3],1]]})");
}

TEST_CASE("planted generators respect their parameters") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    GenerateParams gp;
    gp.n = 3;
    gp.k = 2;
    gp.seed = seed;
    Tensor t = generate("rank1sum", gp)[0];
    CHECK(tensor_rank(t) <= 2);
    Tensor e = generate("esupported", gp)[0];
    CHECK(supported_in_diagonal(e));
  }
}

TEST_CASE("tensor and certificate JSON") {
  GenerateParams gp;
  gp.n = 3;
  gp.seed = 5;
  gp.p = 3;
  Tensor t = generate("random", gp)[0];
  CHECK(tensor_from_json(tensor_to_json(t)) == t);
  gp.p = 2;
  Tensor t2 = generate("random", gp)[0];
  for (const auto& [T, R] : {std::pair{t, PartitionFamily::slice_rank(3)}, std::pair{t2, PartitionFamily::tensor_rank(3)}}) {
    RankReport r = rrank_exact(T, R);
    Json cj = certificate_to_json(r.certificate, T);
    RankCertificate back = certificate_from_json(cj, T);
    CHECK(back.value() == r.value);
    CHECK(back.family == R);
    CHECK(certifies(back, T));
  }
  CHECK(family_from_json(family_to_json(PartitionFamily::partition_rank(4))) == PartitionFamily::partition_rank(4));
  Json bad = tensor_to_json(t);
  bad["axes"][0] = {2, 1, 3};
  CHECK_THROWS_AS(tensor_from_json(bad), Error);
}

TEST_CASE("rank, minor, disjoint and bias commands") {
  Json zero = tensor_to_json(Tensor::cube(Field(2), 3, 3));
  const std::string zpath = write("zero.json", zero);
  Run r = run({"rank", "--notion", "pr", "--input", zpath});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["value"] == 0);

  GenerateParams gp;
  gp.n = 3;
  gp.k = 2;
  gp.seed = 3;
  const std::string tpath = write("planted.json", tensor_to_json(generate("rank1sum", gp)[0]));
  const std::string cpath = (scratch() / "cert.json").string();
  r = run({"rank", "--notion", "tr", "--input", tpath, "--emit-certificate", cpath});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["certificate_ok"] == true);
  CHECK(fs::exists(cpath));

  const std::string diag = write("diag.json", tensor_to_json(generate("diagonal", gp)[0]));
  r = run({"minor", "find", "--notion", "sr", "--target", "2", "--input", diag});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["verified"] == 2);

  // a family file: the flattening {1}{2,3}
  const std::string fam = write("fam.json", Json::parse(R"({"d":3,"partitions":[[[1],[2,3]]]})"));
  r = run({"rank", "--notion", fam, "--input", diag});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["value"] == 3);

  r = run({"minor", "find", "--notion", "tr", "--target", "5", "--input", diag});
  CHECK(r.code == 2);
  CHECK(r.report["error"]["kind"] == "RankTooLow");

  const std::string es = write("es.json", tensor_to_json(generate("esupported", gp)[0]));
  CHECK(run({"disjoint", "find", "--notion", "tr", "--target", "1", "--input", es}).code == 2);

  Tensor pts = Tensor::cube(Field(2), 3, 6);
  pts.set(std::vector<std::size_t>{0, 2, 4}, 1);
  pts.set(std::vector<std::size_t>{1, 3, 5}, 1);
  r = run({"disjoint", "find", "--notion", "tr", "--target", "2", "--input", write("pts.json", tensor_to_json(pts))});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["disjoint"] == true);
  CHECK(r.report["result"]["selection"]["disjoint"] == true);

  r = run({"bias", "--input", zpath, "--exact"});
  CHECK(r.report["result"]["bias"] == "1/1");
  r = run({"bias", "--input", diag, "--samples", "2000", "--seed", "4"});
  CHECK(r.code == 0);
  CHECK(r.text.find("\"seed\":4") != std::string::npos);

  // node budget abort
  gp.n = 4;
  gp.density = 0.7;
  const std::string big = write("big.json", tensor_to_json(generate("random", gp)[0]));
  r = run({"--node-budget", "50", "rank", "--notion", "tr", "--input", big});
  CHECK(r.code == 3);
  CHECK(r.report["error"]["kind"] == "ScaleExceeded");
}

TEST_CASE("verify-counterexample command") {
  Run r = run({"verify-counterexample"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["passed"] == true);
  CHECK(r.report["result"]["slice_rank"] == 4);
  CHECK(r.report["result"]["max_minor_cover"] == 3);
}

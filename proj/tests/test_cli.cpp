#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "degree_lab/cli.hpp"
#include "degree_lab/io.hpp"

using namespace degree_lab;
namespace fs = std::filesystem;

namespace {

const std::string kData = DEGREE_LAB_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "degree-lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

fs::path scratch(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "degree_lab_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("deg prints the Cremona sequence") {
  Run r = run({"deg", "--fan", data("p2.json"), "--map", data("cremona.json"), "--k", "1", "--pmax", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("2, 1, 2, 1") != std::string::npos);
}

TEST_CASE("fan-info on the plane") {
  Run r = run({"fan-info", "--fan", data("p2.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("rank 2, 3 rays, 3 max cones, smooth, dims of N^k = 1,1,1") != std::string::npos);
}

TEST_CASE("siu on F1 passes with a witness") {
  Run r = run({"siu", "--fan", data("f1.json"), "--alpha", data("nef1.json"), "--beta", data("ample.json"), "--k", "1",
               "--format", "json"});
  REQUIRE(r.code == 0);
  io::Json j = io::Json::parse(r.out);
  CHECK(j["pass"].get<bool>());
  CHECK(j["result"]["verdict"]["in_cone"].get<bool>());
  CHECK(j["result"]["siu_constant"] == "2");
  CHECK(!j["result"]["c_min"].get<std::string>().empty());
  CHECK(j["inputs"].size() == 3);
}

TEST_CASE("JSON reports round-trip and re-verify") {
  Run r = run({"siu", "--fan", data("f1.json"), "--alpha", data("nef1.json"), "--beta", data("ample.json"), "--k", "1",
               "--format", "json"});
  REQUIRE(r.code == 0);
  io::Json j = io::Json::parse(r.out);
  CHECK(j.dump(2) + "\n" == r.out);

  Fan f1 = io::fan_from_json(io::load_json_file(data("f1.json"), "fan").value);
  SiuReport rep = io::siu_from_json(j["result"], f1);
  CHECK(verify_siu(rep));
  CHECK(io::siu_json(rep).dump(2) == j["result"].dump(2));

  SiuReport tampered = rep;
  tampered.c_min += 1;
  CHECK(!verify_siu(tampered));

  for (const auto& args : std::vector<std::vector<std::string>>{
           {"lambda", "--fan", data("p2.json"), "--map", data("cat.json"), "--k", "1", "--format", "json"},
           {"product-formula", "--fan", data("p1p1.json"), "--map", data("triangular.json"), "--polarization",
            data("o11.json"), "--fibration", data("fib_p1p1.json"), "--k", "1", "--format", "json"}}) {
    Run a = run(args);
    REQUIRE(a.code == 0);
    CHECK(io::Json::parse(a.out).dump(2) + "\n" == a.out);
  }
}

TEST_CASE("outputs are deterministic across runs and thread caps") {
  std::vector<std::string> args{"mixed-degrees", "--fan",          data("p1p1.json"),     "--map",
                                data("triangular.json"), "--polarization", data("o11.json"), "--fibration",
                                data("fib_p1p1.json"),   "--k",           "1",              "--format",
                                "json"};
  setenv("DEGREE_LAB_THREADS", "1", 1);
  Run a = run(args);
  setenv("DEGREE_LAB_THREADS", "4", 1);
  Run b = run(args);
  unsetenv("DEGREE_LAB_THREADS");
  Run c = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("input hashes are SHA-256 of the file bytes") {
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  Run r = run({"fan-info", "--fan", data("p2.json"), "--format", "json"});
  io::Json j = io::Json::parse(r.out);
  std::ifstream in(data("p2.json"), std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(j["inputs"][0]["sha256"] == io::sha256_hex(buf.str()));
  CHECK(j["inputs"][0]["role"] == "fan");
}

TEST_CASE("csv output has a header row") {
  Run r = run({"deg", "--fan", data("p2.json"), "--map", data("cat.json"), "--k", "1", "--pmax", "3", "--format",
               "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "p,deg,ratio\n1,3,\n2,8,2.666667\n3,21,2.625000\n");
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"deg", "--fan", data("missing.json"), "--map", data("cremona.json")}).code == 2);

  fs::path bad = scratch("bad.json", "{\n  \"rank\": 2,\n  \"rays\": [[1, 0],, [0, 1]]\n}\n");
  Run r = run({"fan-info", "--fan", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3, column") != std::string::npos);

  fs::path incomplete = scratch("incomplete.json", "{\"rank\": 2, \"rays\": [[1, 0], [0, 1], [-1, -1]], "
                                                   "\"max_cones\": [[0, 1], [1, 2]]}");
  Run f = run({"fan-info", "--fan", incomplete.string()});
  CHECK(f.code == 2);
  CHECK(f.err.find("invalid fan") != std::string::npos);

  fs::path singular = scratch("singular.json", "{\"matrix\": [[1, 2], [2, 4]]}");
  CHECK(run({"deg", "--fan", data("p2.json"), "--map", singular.string()}).code == 2);
  CHECK(run({"deg", "--fan", data("p2.json"), "--map", data("cremona.json"), "--k", "3"}).code == 2);
  fs::path not_nef = scratch("not_nef.json", "{\"coeffs\": [\"0\", \"1\", \"0\", \"0\"]}");
  CHECK(run({"siu", "--fan", data("f1.json"), "--alpha", not_nef.string(), "--beta", data("ample.json")}).code == 2);
  fs::path bad_rat = scratch("bad_rat.json", "{\"coeffs\": [\"1/0\", \"0\", \"0\"]}");
  CHECK(run({"deg", "--fan", data("p2.json"), "--map", data("cremona.json"), "--polarization", bad_rat.string()})
            .code == 2);
  CHECK(run({"lambda", "--fan", data("p2.json"), "--map", data("cat.json"), "--tol", "0"}).code == 2);
  CHECK(run({"deg", "--fan", data("p2.json"), "--map", data("cat.json"), "--format", "xml"}).code == 2);
}

TEST_CASE("incompatible fibration is an input error") {
  Run r = run({"product-formula", "--fan", data("p1p1.json"), "--map", data("cat.json"), "--fibration",
               data("fib_p1p1.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("not compatible") != std::string::npos);
}

TEST_CASE("scenario tasks run through suite") {
  Run r = run({"suite", "--scenario", data("scenario.json"), "--format", "json"});
  REQUIRE(r.code == 0);
  io::Json j = io::Json::parse(r.out);
  CHECK(j["result"]["tasks"].size() == 8);
  CHECK(j["inputs"].size() == 7);
  CHECK(j["result"]["tasks"][0]["result"]["values"][0] == "6");

  fs::path sc = scratch("scenario_bad.json", "{\"fan\": \"nowhere.json\", \"map\": \"x.json\", \"tasks\": []}");
  CHECK(run({"suite", "--scenario", sc.string()}).code == 2);
}

TEST_CASE("suite runs selected acceptance criteria") {
  Run r = run({"suite", "--criteria", "3", "--criteria", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("scoreboard: 2/2 criteria pass") != std::string::npos);
  CHECK(run({"suite", "--criteria", "12"}).code == 2);
}

TEST_CASE("fan and divisor files round-trip") {
  Fan f1 = hirzebruch(1);
  CHECK(io::fan_from_json(io::fan_to_json(f1)) == f1);
  TDivisor d(f1, RatVec{Rat(1, 2), 0, 3, Rat(-2, 3)});
  CHECK(io::divisor_from_json(io::divisor_to_json(d), f1) == d);
  CHECK_THROWS_AS(io::divisor_from_json(io::Json{{"coeffs", {"1", "2"}}}, f1), io::InputError);
  CHECK(io::rat_from_json(io::Json(7)) == 7);
  CHECK_THROWS_AS(io::rat_from_json(io::Json("x/2")), io::InputError);
  MonomialMap f(IntMat{{2, 1}, {1, 1}});
  CHECK(io::map_from_json(io::map_to_json(f)) == f);
}

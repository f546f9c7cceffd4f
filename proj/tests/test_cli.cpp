#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ksep/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run ksep_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ksep::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("ksep_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("eval on the Dicke family") {
  const Run r = ksep_run({"eval", "--family", "dicke", "--n", "4", "--m", "2", "--k", "2", "--a", "0.6"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["command"] == "eval");
  CHECK(doc["nk"] == 2);
  CHECK(doc["value"].get<double>() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(doc["verdict"] == "k_nonseparable");
}

TEST_CASE("eval on a state file and a theorem-3 basis") {
  const std::string state = write_temp(
      "phi.json", R"({"kind":"pure_noise","n":4,"amplitudes":[["0011",0.5,0],["0101",0.5,0],["0110",0.5,0],["1010",0.5,0]]})");
  const std::string basis = write_temp("v.json", R"({"n":4,"states":["0011","0101","0110","1010"]})");
  const Run r = ksep_run({"eval", "--state", state, "--criterion", "t3", "--basis", basis, "--k", "3", "--a", "1"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["criterion"] == "t3");
  CHECK(doc["nk"] == 1);
  CHECK(doc["value"].get<double>() == doctest::Approx(1.5));
}

TEST_CASE("threshold closed form prints the exact fraction") {
  const Run r = ksep_run({"threshold", "--family", "dicke", "--n", "4", "--m", "2", "--k", "2"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["a_star"] == "9/17");
  CHECK(doc["a_star_real"].get<double>() == 9.0 / 17);
  CHECK(doc["in_range"] == true);
  CHECK(r.out.find("0.52941176470588236") != std::string::npos);

  const json high = json::parse(ksep_run({"threshold", "--family", "dicke", "--n", "6", "--m", "5", "--k", "2",
                                          "--criterion", "t2"}).out);
  CHECK(high["a_star"] == "33");
  CHECK(high["in_range"] == false);
}

TEST_CASE("threshold by bisection") {
  const Run r = ksep_run({"threshold", "--family", "dicke", "--n", "5", "--m", "3", "--k", "3", "--criterion", "t2",
                          "--method", "bisect"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(std::abs(doc["a_star"].get<double>() - 5.0 / 13) <= 1e-9);
}

TEST_CASE("scan prints CSV") {
  const Run r = ksep_run({"scan", "--family", "dicke", "--n", "4", "--m", "2", "--k", "2", "--grid", "0,1"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, first, last, extra;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, last);
  CHECK(header == "a,value,nk,verdict");
  CHECK(first == "0,-2.25,2,inconclusive");
  CHECK(last.rfind("1,", 0) == 0);
  CHECK(std::stod(last.substr(2)) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(last.ends_with(",2,k_nonseparable"));
  CHECK_FALSE(std::getline(lines, extra));
}

TEST_CASE("partitions lists one partition per line") {
  const Run r = ksep_run({"partitions", "--n", "4", "--k", "2"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["count"] == 7);
  CHECK(doc["partitions"][0] == "1|234");
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 9);
}

TEST_CASE("verify passes on a sound criterion") {
  const Run r = ksep_run({"verify", "--n", "4", "--k", "3", "--trials", "100"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["status"] == "ok");
  CHECK(doc["pure_trials"] == 100);
  CHECK(doc["mixed_trials"] == 10);
}

TEST_CASE("verify exits 2 and writes an artifact on a violation") {
  const std::string basis = write_temp("bad_v.json", R"({"n":4,"states":["0000","1100","0011"]})");
  const std::string artifact = (std::filesystem::temp_directory_path() / "ksep_test_violation.json").string();
  const Run r = ksep_run({"verify", "--n", "4", "--k", "2", "--criterion", "t3", "--basis", basis, "--trials", "2000",
                          "--artifact", artifact});
  CHECK(r.code == 2);
  const json doc = json::parse(r.out);
  CHECK(doc["status"] == "violation");
  CHECK(doc["violation"]["criterion"] == "t3");
  CHECK(doc["state"]["kind"] == "density");
  std::ifstream in(artifact);
  CHECK(json::parse(in)["n"] == 4);

  // the saved state reproduces the violation
  const Run again = ksep_run({"eval", "--state", artifact, "--criterion", "t3", "--basis", basis, "--k", "2"});
  REQUIRE(again.code == 0);
  CHECK(json::parse(again.out)["value"].get<double>() > 1e-9);
}

TEST_CASE("parameter and IO errors exit 1") {
  CHECK(ksep_run({}).code == 1);
  CHECK(ksep_run({"eval", "--family", "dicke", "--n", "4", "--m", "2", "--k", "2"}).code == 1);
  CHECK(ksep_run({"eval", "--family", "dicke", "--n", "4", "--m", "2", "--k", "7", "--a", "0.5"}).code == 1);
  CHECK(ksep_run({"eval", "--state", "/nonexistent.json", "--k", "2"}).code == 1);
  CHECK(ksep_run({"threshold", "--family", "dicke", "--n", "7", "--m", "6", "--k", "2", "--criterion", "t2"}).code == 1);
  CHECK(ksep_run({"frobnicate"}).code == 1);
  const Run bad = ksep_run({"eval", "--state", write_temp("bad.json", "{"), "--k", "2"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("syntax") != std::string::npos);
}

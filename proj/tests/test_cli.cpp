#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cvpi/json_io.hpp"

using cvpi::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(CVPI_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  Run r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "cvpi_cli_test";
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kF = R"('{"jumps":[0,1,2],"cum":[0.3333333333333333,0.6666666666666666,1]}')";
const char* kG = R"('{"jumps":[0,1,5],"cum":[0.3333333333333333,0.6666666666666666,1]}')";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gauge prints value, witness and side") {
  const auto r = cli(std::string("gauge --f ") + kF + " --g " + kG + " --delta 1");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["schema"] == "1");
  CHECK(j["value"].get<double>() == doctest::Approx(1.0 / 3));
  CHECK(j["side"] == "F_over_G");
}

TEST_CASE("exit codes and error objects") {
  auto r = cli("gauge --delta 1");
  CHECK(r.code == 2);
  CHECK(Json::parse(r.out)["error"]["kind"] == "UsageError");
  r = cli(std::string("gauge --f ") + kF + " --g " + kG + " --delta -1");
  CHECK(r.code == 2);
  r = cli("interval --data /nonexistent/file.csv --predictor '{\"kind\":\"constant\"}' --xnew 0");
  CHECK(r.code == 3);
  CHECK(Json::parse(r.out)["error"]["kind"] == "MalformedInput");
  const auto data = scratch("flat.csv", "y,x1\n1,0\n5,0\n3,0\n");
  r = cli("interval --data " + data.string() + " --predictor '{\"kind\":\"ridge\",\"lambda\":0}' --xnew 0");
  CHECK(r.code == 4);
  CHECK(Json::parse(r.out)["error"]["kind"] == "DegenerateFit");
}

TEST_CASE("interval on the maximum example") {
  const auto data = scratch("max.csv", "y,x1\n1,0\n5,0\n3,0\n");
  const auto r = cli("interval --data " + data.string() +
                     " --predictor '{\"kind\":\"max_response\"}' --alpha1 0 --alpha2 0.6666666666666666 --xnew 0");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["hi"].get<double>() == 3);
  CHECK(j["lo"] == "-inf");
}

TEST_CASE("config values fill in, explicit flags win") {
  const auto cfg = scratch("gauge.json", std::string(R"({"f":)") + std::string(kF).substr(1, std::strlen(kF) - 2) +
                                             R"(,"g":)" + std::string(kG).substr(1, std::strlen(kG) - 2) +
                                             R"(,"delta":1})");
  const auto a = cli("gauge --config " + cfg.string());
  REQUIRE(a.code == 0);
  CHECK(Json::parse(a.out)["delta"].get<double>() == 1);
  const auto b = cli("gauge --config " + cfg.string() + " --delta 3");
  REQUIRE(b.code == 0);
  CHECK(Json::parse(b.out)["delta"].get<double>() == 3);
  CHECK(Json::parse(b.out)["value"].get<double>() == 0);
}

TEST_CASE("out and csv files, same bytes at any thread count") {
  const auto dir = std::filesystem::temp_directory_path() / "cvpi_cli_test";
  std::filesystem::create_directories(dir);
  const std::string base = "sim coverage --n 15 --reps 6 --mc-test 200 --seed 9 --dgp '{\"kind\":\"gaussian_linear\",\"beta\":[1]}' --predictor '{\"kind\":\"ridge\",\"lambda\":1}'";
  const auto r1 = cli(base + " --threads 1 --out " + (dir / "o1.json").string() + " --csv " + (dir / "c1.csv").string());
  const auto r8 = cli(base + " --threads 8 --out " + (dir / "o8.json").string() + " --csv " + (dir / "c8.csv").string());
  REQUIRE(r1.code == 0);
  REQUIRE(r8.code == 0);
  CHECK(r1.out.empty());
  CHECK(slurp(dir / "o1.json") == slurp(dir / "o8.json"));
  CHECK(slurp(dir / "c1.csv") == slurp(dir / "c8.csv"));
  CHECK(slurp(dir / "c1.csv").rfind("rep,", 0) == 0);
}

TEST_CASE("dgp writes a readable table") {
  const auto dir = std::filesystem::temp_directory_path() / "cvpi_cli_test";
  std::filesystem::create_directories(dir);
  const auto r = cli("dgp --dgp '{\"kind\":\"gaussian_linear\",\"beta\":[1,2]}' --n 7 --seed 3 --csv " + (dir / "d.csv").string());
  REQUIRE(r.code == 0);
  const std::string text = slurp(dir / "d.csv");
  CHECK(std::count(text.begin(), text.end(), '\n') == 8);
}

}  // TEST_SUITE

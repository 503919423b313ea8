#include "doctest.h"

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace walshlab;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "walshlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("kernel csv in exact mode") {
  const auto path = std::filesystem::temp_directory_path() / "walshlab_kernel_test.csv";
  const auto r = invoke({"kernel", "--kind", "dirichlet", "--system", "paley", "--n", "8",
                         "--resolution", "4", "--format", "csv", "--out", path.string()});
  REQUIRE(r.code == 0);
  std::istringstream csv(slurp(path));
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("# config ", 0) == 0);
  std::getline(csv, line);
  CHECK(line == "index,value_numerator,value_denominator");
  for (Index j = 0; j < 16; ++j) {
    std::getline(csv, line);
    const std::string want = std::to_string(j) + "," + ((j & 7) == 0 ? "8" : "0") + ",1";
    CHECK(line == want);
  }
  std::filesystem::remove(path);
}

TEST_CASE("json reports carry the required keys") {
  const auto r = invoke({"verify", "lemma2", "--A", "3"});
  REQUIRE(r.code == 0);
  const auto pos = r.out.find("{\n  \"config\"");
  REQUIRE(pos != std::string::npos);
  const auto doc = nlohmann::json::parse(r.out.substr(pos));
  CHECK(doc["config"]["A"] == 3);
  const auto& rep = doc["reports"][0];
  for (const char* key : {"claim", "parameters", "verdict", "witness", "mode"})
    CHECK(rep.contains(key));
  CHECK(rep["verdict"] == "pass");
}

TEST_CASE("exit codes") {
  CHECK(invoke({"verify", "yano", "--n-max", "16", "--resolution", "4"}).code == 0);
  CHECK(invoke({"verify", "lemma2", "--A", "2"}).code == 2);
  CHECK(invoke({"kernel", "--kind", "haar"}).code == 2);
  CHECK(invoke({"kernel", "--n", "17", "--resolution", "4"}).code == 2);
  CHECK(invoke({"kernel", "--resolution", "40"}).code == 3);
  CHECK(invoke({"bogus"}).code == 2);
}

TEST_CASE("reports do not depend on the thread count") {
  const auto a = invoke({"verify", "identities", "--resolution", "6", "--seed", "5", "--float",
                         "--threads", "1"});
  const auto b = invoke({"verify", "identities", "--resolution", "6", "--seed", "5", "--float",
                         "--threads", "4"});
  const auto strip = [](const std::string& s) { return s.substr(s.find("{\n  \"config\"")); };
  CHECK(strip(a.out) == strip(b.out));
}

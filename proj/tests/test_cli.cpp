#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "scl/rational.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SCLKIT_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("scl") {
    CHECK(run("scl '[a,b]'").out == "1/2\n");
    auto r = run("scl '[a,b][c,aa]'");
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
    CHECK(run("scl aab").code == 3);
    CHECK(run("scl '[a'").code == 2);
    CHECK(run("--mode oracle scl '[a,b][c,d][a,c][b,d]'").code == 5);
    auto j = nlohmann::json::parse(run("scl '[a,b]' --format json").out);
    CHECK(j["scl"] == "1/2");
    CHECK(j["mode"] == "fast");
  }

  TEST_CASE("surface") {
    auto r = run("surface '[a,b]'");
    CHECK(r.code == 0);
    CHECK(r.out.find("chi -1\n") != std::string::npos);
    CHECK(r.out.find("boundary 1\n") != std::string::npos);
    auto a = run("surface 'a + A'");
    CHECK(a.out.find("chi 0\n") != std::string::npos);
    CHECK(a.out.find("boundary 2\n") != std::string::npos);
    CHECK(run("surface 'a+'").code == 2);
    const auto path = std::filesystem::temp_directory_path() / "sclkit_surface_test.json";
    CHECK(run("surface '[a,b]' --out " + path.string()).code == 0);
    auto j = nlohmann::json::parse(slurp(path));
    CHECK(j["euler_characteristic"] == -1);
    std::filesystem::remove(path);
  }

  TEST_CASE("certify") {
    auto r = run("certify example1 --v aa");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "incompressible");
    CHECK(j["norm"] == "3");
    CHECK(j["min_cover_index"] == 2);
    auto b = run("certify amalgam --scl-left 1/2 --scl-right 1/2 --genus 3");
    CHECK(b.code == 1);
    CHECK(nlohmann::json::parse(b.out)["verdict"] == "inconclusive");
    auto e4 = run("certify example4 --N 3 --signs +,- --conjugators '',a");
    CHECK(e4.code == 0);
    CHECK(nlohmann::json::parse(e4.out)["reference_scl"]["value"] == "1/3");
    CHECK(run("certify example1 --v c").code == 2);
    CHECK(run("certify example4 --N 3 --signs +,+ --conjugators '',a").code == 2);
    CHECK(run("certify amalgam --scl-left 1/2 --left-word '[a,b]' --scl-right 1/2").code == 2);
    CHECK(run("certify nosuch").code == 2);
  }

  TEST_CASE("experiment") {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string a = (dir / "sclkit_exp_a").string(), b = (dir / "sclkit_exp_b").string();
    CHECK(run("experiment --lengths 4,8 --samples 5 --seed 42 --out " + a).code == 0);
    CHECK(run("experiment --lengths 4,8 --samples 5 --seed 42 --workers 1 --out " + b).code == 0);
    CHECK(slurp(a + ".csv") == slurp(b + ".csv"));
    CHECK(slurp(a + ".summary.json") == slurp(b + ".summary.json"));
    auto j = nlohmann::json::parse(slurp(a + ".summary.json"));
    for (const auto& s : j["summary"]) {
      const scl::Rational m = scl::parse_rational(s["mean"].get<std::string>());
      CHECK(m >= scl::make_rational(1, 2));
      CHECK(m <= scl::make_rational(3, 2));
    }
    CHECK(run("experiment --samples 0").code == 2);
    CHECK(run("experiment --lengths 8,4").code == 2);
    for (const auto& p : {a + ".csv", a + ".summary.json", b + ".csv", b + ".summary.json"})
      std::filesystem::remove(p);
  }
}

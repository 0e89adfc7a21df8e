#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CPPFORGE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("cppforge_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("construct then verify") {
  const Run c = run("construct --family trinomial --m 2 --v 2");
  REQUIRE(c.status == 0);
  const auto j = nlohmann::json::parse(c.out);
  CHECK(j["polynomial"]["family"] == "Trinomial");
  CHECK(j.contains("manifest"));
  const std::string path = temp_file("tri.json", c.out);
  const Run v = run("verify --poly " + path + " --cpp");
  CHECK(v.status == 0);
  CHECK(nlohmann::json::parse(v.out)["report"]["verdict"] == "verified");

  const Run e = run("eval --poly " + path + " --x 1");
  REQUIRE(e.status == 0);
  const auto points = nlohmann::json::parse(e.out)["points"];
  // F(1) = 1 + 1 + v.
  CHECK(points[0]["value"] == nlohmann::json::parse(c.out)["polynomial"]["params"]["v"]);

  const Run inv = run("invert --poly " + path);
  REQUIRE(inv.status == 0);
  const std::string inv_path = temp_file("tri_inv.json", inv.out);
  CHECK(run("verify --poly " + inv_path + " --inverse-of " + path).status == 0);
  CHECK(run("verify --poly " + inv_path + " --cpp").status == 0);
}

TEST_CASE("exit codes") {
  const std::string id = temp_file("id.json", R"({"field":{"degree":4},"terms":[{"coeff_hex":"1","exp":"1"}]})");
  const Run r = run("verify --poly " + id + " --cpp");
  CHECK(r.status == 1);
  CHECK(nlohmann::json::parse(r.out)["report"]["counterexample"]["map"] == "f+x");
  CHECK(run("verify --poly " + id + " --perm").status == 0);

  const std::string cube = temp_file("x3.json", R"({"field":{"degree":30},"terms":[{"coeff_hex":"1","exp":"3"}]})");
  CHECK(run("verify --poly " + cube + " --perm --sampled 1000 --seed 1").status == 2);
  CHECK(run("verify --poly " + cube + " --perm").status == 3);

  CHECK(run("construct --family mono1 --m 3").status == 3);
  CHECK(run("search --m 9").status == 3);
  CHECK(run("invert --exponent 3 --degree 6").status == 3);
  CHECK(run("verify --poly /nonexistent.json").status == 3);
}

TEST_CASE("invert and search output") {
  const Run r = run("invert --exponent 22 --degree 6");
  REQUIRE(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["inverse"]["d_inv"] == "43");
  const Run crt = run("invert --crt --m 5 --r 67");
  REQUIRE(crt.status == 0);
  CHECK(nlohmann::json::parse(crt.out)["inverse"]["d_inv"] == "397");
  const Run s = run("search --m 3");
  REQUIRE(s.status == 0);
  CHECK(nlohmann::json::parse(s.out)["count"] == 6);
}

TEST_CASE("recursive construction from a search result") {
  const Run s = run("search --m 3 --max-results 1");
  REQUIRE(s.status == 0);
  const std::string seeds = temp_file("seeds.json", s.out);
  const Run c = run("construct --family recursive --seed-file " + seeds + " --n 3 --u 3");
  REQUIRE(c.status == 0);
  const std::string poly = temp_file("rec.json", c.out);
  CHECK(run("verify --poly " + poly + " --cpp").status == 0);
  const Run inv = run("invert --poly " + poly);
  REQUIRE(inv.status == 0);
  CHECK(nlohmann::json::parse(inv.out)["polynomial"]["family"] == "InverseRecursive");
  CHECK(run("verify --poly " + temp_file("rec_inv.json", inv.out) + " --inverse-of " + poly).status == 0);
}

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "steinergap/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(STEINERGAP_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

long lines(const fs::path& p) {
  std::ifstream in(p);
  long n = 0;
  std::string s;
  while (std::getline(in, s)) n += !s.empty();
  return n;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("steinergap-cli-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("cli enumerate writes catalogs") {
  fs::path dir = scratch("enum");
  Run r = cli("enumerate phi 7 4 --quiet --out " + dir.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("2 vertices, max gap 10/9 x2") != std::string::npos);
  CHECK(lines(dir / "catalog-7-4.ndjson") == 2);
  // rerunning adds nothing new
  cli("enumerate phi 7 4 --quiet --out " + dir.string());
  CHECK(lines(dir / "catalog-7-4.ndjson") == 2);

  r = cli("enumerate exact 4 3 --kind cm --quiet --out " + dir.string());
  CHECK(r.status == 0);
  CHECK(lines(dir / "catalog-4-3-cm-labeled.ndjson") == 4);

  r = cli("enumerate poq 7 5 --quiet --out " + dir.string());
  CHECK(r.status == 0);
  CHECK(lines(dir / "catalog-7-5.ndjson") == 0);

  r = cli("verify " + (dir / "catalog-7-4.ndjson").string());
  CHECK(r.status == 0);
  CHECK(r.out.find("2 records verified, 0 failed") != std::string::npos);

  r = cli("report --csv --dir " + dir.string());
  CHECK(r.out.find("cm,7,4,2") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli checkpoint resumes without repeating work") {
  fs::path dir = scratch("ckpt");
  fs::create_directories(dir);
  std::string ck = (dir / "ck.txt").string();
  cli("enumerate phi 7 4 --quiet --no-gap --out " + dir.string() + " --checkpoint " + ck);
  CHECK(lines(ck) > 0);
  Run r = cli("enumerate phi 7 4 --quiet --no-gap --out " + dir.string() + " --checkpoint " + ck);
  CHECK(r.out.find("0 vertices") != std::string::npos);
  CHECK(r.out.find("skipped from checkpoint") != std::string::npos);
  CHECK(lines(dir / "catalog-7-4.ndjson") == 2);
  fs::remove_all(dir);
}

TEST_CASE("cli gap, builtin and verify") {
  fs::path dir = scratch("gap");
  fs::create_directories(dir);
  Run r = cli("gap builtin:oddwheel-7-4-a");
  CHECK(r.status == 0);
  CHECK(r.out == "10/9 (1.111111)\n");

  std::string point = (dir / "p.json").string();
  std::string cert = (dir / "c.json").string();
  std::string inst = (dir / "i.json").string();
  r = cli("builtin skutella --out " + point);
  CHECK(r.status == 0);
  auto j = steinergap::json::parse(steinergap::read_text_file(point));
  CHECK(j["arcs"].size() == 35);
  for (const auto& a : j["arcs"]) CHECK(a["value"] == "1/4");

  r = cli("builtin fig5-a --out " + point + " --instance " + inst);
  CHECK(r.status == 0);
  r = cli("solve " + inst);
  CHECK(r.out.find("ratio 12/11") != std::string::npos);
  r = cli("gap " + point + " --out " + cert);
  CHECK(r.out == "12/11 (1.090909)\n");
  r = cli("verify " + cert);
  CHECK(r.status == 0);
  r = cli("verify " + point);
  CHECK(r.out.rfind("vertex of P_cm(8,5)", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("cli closure of a sparse graph") {
  fs::path dir = scratch("closure");
  fs::create_directories(dir);
  std::string g = (dir / "g.json").string();
  steinergap::write_text_file(g, R"({"n":4,"t":2,"edges":[[1,3,2],[3,2,2],[3,4,1]]})");
  Run r = cli("closure " + g);
  CHECK(r.status == 0);
  auto j = steinergap::json::parse(r.out);
  CHECK(j["costs"][0][1] == "4");
  CHECK(j["costs"][1][3] == "3");
  fs::remove_all(dir);
}

TEST_CASE("cli rejects bad parameters") {
  CHECK(cli("enumerate phi 3 4").status == 64);
  CHECK(cli("enumerate poq 5 4").status != 0);
  CHECK(cli("gap builtin:nope").status == 1);
  CHECK(cli("reproduce nothing").status == 64);
  Run r = cli("reproduce table1 --max-n 4");
  CHECK(r.out.find("match    exact cm (4,3): 4 feasible, 4 optimal") != std::string::npos);
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.h"
#include "oracles.h"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = pathcode::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) {
  return std::string(PATHCODE_DATA_DIR) + "/" + rel;
}

// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("pathcode_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string field(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  }
  return "";
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"optimize"}).code == 2);
  CHECK(cli({"optimize", data("examples/tree.topo"), "--format", "xml"}).code == 2);
  CHECK(cli({"optimize", "/nonexistent/file.topo"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("optimize the tree") {
  const Result r = cli({"optimize", data("examples/tree.topo"), "--oracle"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "fixed") == "5");
  CHECK(field(r.out, "variable") == "3");
  CHECK(field(r.out, "optimum") == "3");
  CHECK(field(r.out, "paths") == "7");
  CHECK(r.out.find("labels:") != std::string::npos);

  const Result j = cli({"optimize", data("examples/tree.topo"), "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["report"]["variable"] == 3);
  CHECK(doc["report"]["fixed"] == 5);

  const Result c = cli({"optimize", data("examples/tree.topo"), "--format", "csv"});
  REQUIRE(c.code == 0);
  CHECK(c.out.rfind("vertices,arcs,paths,fixed,", 0) == 0);
  CHECK(c.out.find("\n10,9,7,5,") != std::string::npos);
}

TEST_CASE("optimize the spine") {
  const fs::path dir = scratch("spine");
  const Result g = cli({"gen", "--spine", "4", "-o", (dir / "s.topo").string()});
  REQUIRE(g.code == 0);
  const Result r = cli({"optimize", (dir / "s.topo").string(), "--oracle"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "relaxed") == "2.3219");
  CHECK(field(r.out, "variable") == "4");
  CHECK(field(r.out, "optimum") == "4");
}

TEST_CASE("malformed topology exits with 2 and a line number") {
  const fs::path dir = scratch("bad");
  write(dir / "bad.topo", "node a\nnode b\narc a c\npath a b\n");
  const Result r = cli({"optimize", (dir / "bad.topo").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("optimize writes labels, lengths and trace") {
  const fs::path dir = scratch("files");
  const Result r = cli({"optimize", data("examples/tree.topo"), "--labels",
                        (dir / "l.json").string(), "--lengths",
                        (dir / "n.json").string(), "--trace", (dir / "t.csv").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("labels:") == std::string::npos);
  const auto labels = nlohmann::json::parse(read(dir / "l.json"));
  CHECK(labels["S0"]["S1"] == "0");
  const auto lengths = nlohmann::json::parse(read(dir / "n.json"));
  CHECK(lengths["objective"] == 3);
  CHECK(read(dir / "t.csv").rfind("iteration,dual_objective,gradient_norm,step\n", 0) == 0);
}

TEST_CASE("encode and simulate roundtrip") {
  const fs::path dir = scratch("codec");
  const std::string topo = data("examples/tree.topo");
  const std::string labels = (dir / "l.json").string();
  REQUIRE(cli({"optimize", topo, "--labels", labels}).code == 0);

  const Result e = cli({"encode", topo, labels, "S0", "S1", "S2", "S8"});
  REQUIRE(e.code == 0);
  // Pointer 0, three bits, all zero.
  CHECK(e.out == "0000000300\n");
  const Result s = cli({"simulate", topo, labels, "S0", "0000000300"});
  CHECK(s.code == 0);
  CHECK(s.out == "S0 S1 S2 S8\n");

  // Flipping the last bit sends the packet to S9 instead.
  CHECK(cli({"simulate", topo, labels, "S0", "0000000320"}).out == "S0 S1 S2 S9\n");
  // A fourth bit has nowhere to go at S8.
  const Result t = cli({"simulate", topo, labels, "S0", "0000000400"});
  CHECK(t.code == 2);
  CHECK(t.err.find("S8") != std::string::npos);

  CHECK(cli({"encode", topo, labels, "S0"}).code == 2);
  CHECK(cli({"encode", topo, labels, "S0", "S2"}).code == 2);
  CHECK(cli({"simulate", topo, labels, "S0", "zz"}).code == 2);
  CHECK(cli({"simulate", topo, labels, "Q", "0000000300"}).code == 2);
}

TEST_CASE("bench") {
  const fs::path dir = scratch("bench");
  REQUIRE(cli({"gen", "--spine", "4", "-o", (dir / "spine4.topo").string()}).code == 0);
  fs::copy_file(data("examples/tree.topo"), dir / "tree.topo");
  const Result r = cli({"bench", dir.string(), "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "network,nodes,edges,paths,fixed,variable,relaxed,error\n"
        "spine4.topo,9,8,5,4,4,2.3219,\n"
        "tree.topo,10,9,7,5,3,2.8074,\n");
  const Result text = cli({"bench", dir.string(), "--csv", (dir / "out.csv").string()});
  CHECK(text.code == 0);
  CHECK(read(dir / "out.csv") == r.out);

  const fs::path empty = scratch("bench_empty");
  const Result e = cli({"bench", empty.string(), "--format", "csv"});
  CHECK(e.code == 0);
  CHECK(e.out == "network,nodes,edges,paths,fixed,variable,relaxed,error\n");

  write(dir / "zz_bad.topo", "node a\narc a b\n");
  const Result bad = cli({"bench", dir.string(), "--format", "csv"});
  CHECK(bad.code == 0);
  CHECK(bad.out.find("zz_bad.topo,,,,,,") != std::string::npos);
  CHECK(cli({"bench", "/nonexistent/dir"}).code == 2);
}

TEST_CASE("bench on Abilene reports 110 paths") {
  const fs::path dir = scratch("abilene");
  fs::copy_file(data("bench/abilene.topo"), dir / "abilene.topo");
  const Result r = cli({"bench", dir.string(), "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\nabilene.topo,11,28,110,9,7,") != std::string::npos);
}

TEST_CASE("gen") {
  const Result spine = cli({"gen", "--spine", "5"});
  REQUIRE(spine.code == 0);
  std::size_t nodes = 0;
  std::istringstream in(spine.out);
  std::string line;
  while (std::getline(in, line)) nodes += line.rfind("node ", 0) == 0;
  CHECK(nodes == 11);

  const std::vector<std::string> random{"gen", "--random", "--vertices", "8",
                                        "--out-degree", "3", "--paths", "10",
                                        "--seed", "7"};
  const Result a = cli(random);
  REQUIRE(a.code == 0);
  CHECK(a.out == cli(random).out);
  std::vector<std::string> other = random;
  other.back() = "8";
  CHECK(cli(other).out != a.out);

  const fs::path dir = scratch("gen");
  write(dir / "f.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 0\n");
  const Result g = cli({"gen", "--cnf", (dir / "f.cnf").string()});
  REQUIRE(g.code == 0);
  std::size_t paths = 0;
  std::istringstream gin(g.out);
  while (std::getline(gin, line)) paths += line.rfind("path ", 0) == 0;
  CHECK(paths == 2);
  CHECK(g.err.find("warning:") != std::string::npos);
  write(dir / "g.topo", g.out);
  CHECK(cli({"optimize", (dir / "g.topo").string()}).code == 0);

  write(dir / "bad.cnf", "p cnf 2 1\n1 2 0\n");
  CHECK(cli({"gen", "--cnf", (dir / "bad.cnf").string()}).code == 2);
  CHECK(cli({"gen"}).code == 2);
  CHECK(cli({"gen", "--spine", "3", "--random"}).code == 2);
}

TEST_CASE("repeated runs are byte-identical") {
  const fs::path dir = scratch("repeat");
  const std::vector<std::string> opt{"optimize", data("bench/random12.topo"),
                                     "--format", "json"};
  CHECK(cli(opt).out == cli(opt).out);
  const std::vector<std::string> b{"bench", data("bench"), "--format", "csv"};
  CHECK(cli(b).out == cli(b).out);
}

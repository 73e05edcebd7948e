#include "doctest.h"

#include "cli.hpp"
#include "gradcon/io.hpp"

#include <filesystem>
#include <sstream>

using namespace gradcon;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "gradcon_cli_test") {
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string &name, const std::string &text) const {
    write_text_file(path / name, text);
    return (path / name).string();
  }
};

const char *kSl2 = R"({"group": "Z2", "degrees": [[0],[1],[1]],
  "brackets": [{"i":0,"j":1,"terms":[{"k":1,"c":"2"}]},
               {"i":0,"j":2,"terms":[{"k":2,"c":"-2"}]},
               {"i":1,"j":2,"terms":[{"k":0,"c":"1"}]}]})";

} // namespace

TEST_CASE("supports") {
  auto r = run({"supports", "Z2", "--count-only"});
  CHECK(r.code == 0);
  CHECK(r.out == "5\n");
  auto j = Json::parse(run({"supports", "Z3"}).out);
  CHECK(j["result"]["count"] == 15);
  CHECK(j["command"] == "supports");
  CHECK(j["group"] == "Z3");
  CHECK(j["deterministic"] == true);
}

TEST_CASE("table1") {
  auto r = run({"table1", "Z6"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["result"]["rows"][0]["supports"] == 652);
  CHECK(j["result"]["rows"][0]["ratio"] == "3.11E-4");
  auto t = run({"table1", "Z2", "Z2xZ2", "--text"});
  CHECK(t.out.find("6.25E-1") != std::string::npos);
  CHECK(t.out.find("41") != std::string::npos);
}

TEST_CASE("classify") {
  auto r = run({"classify", "Z2", "--field", "real", "--support", "full"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["result"]["descriptor"]["sign_rank"] == 1);
  auto all = Json::parse(run({"classify", "Z2", "--field", "closed"}).out);
  CHECK(all["result"]["count"] == 5);
  auto bad = run({"classify", "Z2", "--field", "real", "--support", R"(["0|1"])"});
  CHECK(bad.code == 2);
  CHECK_FALSE(bad.err.empty());
  CHECK(run({"classify", "Z2", "--field", "complex"}).code == 1);
}

TEST_CASE("invariants and ideals") {
  auto inv = Json::parse(run({"invariants", "Z2", "--support", "full"}).out);
  CHECK(inv["result"]["N"] == 2);
  CHECK(inv["result"]["N_prime"] == 2);
  CHECK(inv["result"]["N_doubleprime"] == 2);
  CHECK(inv["result"]["K_S"]["rank"] == 0);
  CHECK(inv["result"]["K_S"]["torsion"] == Json::array());
  CHECK(inv["result"]["C_S"]["rank"] == 0);
  auto ideal = run({"ideal", "Z2", "--support", "full", "--text"});
  CHECK(ideal.out == "x[0|0] - x[0|1]\n");
  auto def = Json::parse(run({"ideal", "Z2", "--defining"}).out);
  CHECK(def["result"]["count"] == 2);
  CHECK(run({"ideal", "Z2"}).code == 1);
}

TEST_CASE("degeneration, equivalence and validation errors") {
  TempDir tmp;
  const auto good = tmp.file("good.json", R"({"0|0": 2, "1|1": 5, "0|1": 2})");
  const auto bad = tmp.file("bad.json", R"({"0|0": 2, "1|1": 5, "0|1": 3})");
  const auto sign = tmp.file("sign.json", R"({"0|0": 1, "1|1": -1, "0|1": 1})");
  const auto one = tmp.file("one.json", R"({"0|0": 1, "1|1": 1, "0|1": 1})");

  auto d = Json::parse(run({"degeneration", "Z2", "--contraction", good, "--supp2", "full"}).out);
  CHECK(d["result"]["is_degeneration"] == true);
  auto v = run({"degeneration", "Z2", "--contraction", bad, "--supp2", "full"});
  CHECK(v.code == 2);
  CHECK(v.err.find("fails at") != std::string::npos);

  auto ne = Json::parse(run({"equivalent", "Z2", "--field", "real", one, sign}).out);
  CHECK(ne["result"]["equivalent_via_normalization"] == false);
  CHECK(ne["result"]["note"].get<std::string>().find("does not certify") != std::string::npos);
  auto eq = Json::parse(run({"equivalent", "Z2", "--field", "closed", one, sign}).out);
  CHECK(eq["result"]["equivalent_via_normalization"] == true);

  CHECK(run({"degeneration", "Z2", "--contraction", (tmp.path / "none.json").string(), "--supp2", "full"}).code == 1);
}

TEST_CASE("apply") {
  TempDir tmp;
  const auto alg = tmp.file("sl2.json", kSl2);
  const auto c = tmp.file("c.json", R"({"0|0": 1, "0|1": 1})");
  const auto outfile = (tmp.path / "out.json").string();
  auto r = run({"apply", "Z2", "--algebra", alg, "--contraction", c, "--out", outfile});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["result"]["second_support"] == Json::parse("[[[0],[1]]]"));
  auto written = read_json_file(outfile);
  CHECK(written == j["result"]["algebra"]);
  CHECK(algebra_from_json(written).structure().size() == 2);

  const auto broken = tmp.file("broken.json", R"({"group": "Z2", "degrees": [[0],[1],[1]],
    "brackets": [{"i":0,"j":1,"terms":[{"k":1,"c":"3"}]},
                 {"i":0,"j":2,"terms":[{"k":2,"c":"-2"}]},
                 {"i":1,"j":2,"terms":[{"k":0,"c":"1"}]}]})");
  auto b = run({"apply", "Z2", "--algebra", broken, "--contraction", c});
  CHECK(b.code == 2);
  CHECK(b.err.find("Jacobi") != std::string::npos);
}

TEST_CASE("input errors") {
  CHECK(run({"supports", "Q8"}).code == 1);
  CHECK(run({"supports", "Z2xS3"}).code == 1);
  CHECK(run({"frobnicate"}).code != 0);
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("output is byte-identical across runs and thread counts") {
  const std::vector<std::vector<std::string>> cmds{
      {"supports", "Z4"},
      {"classify", "Z2^3", "--field", "real"},
      {"classify", "Z6", "--field", "closed"},
      {"table1", "Z2", "Z3", "Z4"},
      {"ideal", "Z3", "--defining"},
  };
  for (const auto &cmd : cmds) {
    const auto first = run(cmd).out;
    CHECK(run(cmd).out == first);
    auto threaded = cmd;
    threaded.push_back("--threads");
    threaded.push_back("4");
    CHECK(run(threaded).out == first);
  }
}

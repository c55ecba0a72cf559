#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mumd/cli.hpp"
#include "mumd/error.hpp"
#include "mumd/mum.hpp"
#include "mumd/sweep.hpp"
#include "oracles.hpp"

using namespace mumd;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "mumd_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("ParamGrid") {
  const ParamGrid g = parse_grid("0:1:0.01");
  CHECK(g.count() == 101);
  CHECK(g.at(0) == 0.0);
  CHECK(g.at(100) == 1.0);
  CHECK(parse_grid("0:1:0.3").count() == 4);
  CHECK(parse_grid("0.5:0.5:0.1").count() == 1);
  CHECK_THROWS_AS(parse_grid("0:1"), ValidationError);
  CHECK_THROWS_AS(parse_grid("a:1:0.1"), ValidationError);
}

TEST_CASE("sweep validation") {
  SweepSpec spec;
  spec.d = 3;
  spec.grid = parse_grid("0:1.2:0.1");
  CHECK_THROWS_AS(validate(spec), ValidationError);
  spec.grid = parse_grid("0:1:0");
  CHECK_THROWS_AS(validate(spec), ValidationError);
  spec.grid = parse_grid("0:1e7:1");
  CHECK_THROWS_AS(validate(spec), ValidationError);

  SweepSpec bell;
  bell.family = Family::BellDiagonal;
  bell.d = 3;
  bell.grid = parse_grid("0:1:0.1");
  bell.pairing = Pairing::BellChoice;
  CHECK_THROWS_AS(validate(bell), ValidationError);
  bell.grid = parse_grid("0.2:1:0.1");
  CHECK_NOTHROW(validate(bell));
  bell.pairing = Pairing::Conjugate;
  CHECK_THROWS_AS(validate(bell), ValidationError);
}

TEST_CASE("isotropic sweep matches the closed form") {
  SweepSpec spec;
  spec.d = 3;
  spec.grid = parse_grid("0:1:0.01");
  const auto lines = split_lines(emit_figure_data(spec));
  REQUIRE(lines.size() == 102);
  CHECK(lines[0] == "family,d,kappa,param,value,bound,verdict,ppt_min_eig");
  const double k = optimal_kappa(3);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv(lines[i]);
    REQUIRE(cells.size() == 8);
    const double alpha = std::stod(cells[3]);
    CHECK(std::abs(std::stod(cells[4]) - oracle::isotropic_j(3, k, alpha)) <= 1e-9);
    CHECK(std::abs(std::stod(cells[7]) - oracle::isotropic_pt_min(3, alpha)) <= 1e-12);
    CHECK(cells[6] == (alpha > 0.25 + 1e-6 ? "entangled" : "inconclusive"));
  }
}

TEST_CASE("Bell-diagonal sweep carries the lower bound") {
  SweepSpec spec;
  spec.family = Family::BellDiagonal;
  spec.d = 2;
  spec.pairing = Pairing::BellChoice;
  spec.grid = parse_grid("0.25:1:0.25");
  const auto lines = split_lines(emit_figure_data(spec));
  REQUIRE(lines.size() == 5);
  const auto last = split_csv(lines[4]);
  CHECK(std::stod(last[4]) == doctest::Approx(3.0));
  CHECK(last[6] == "entangled");
  const auto first = split_csv(lines[1]);
  CHECK(first[6] == "inconclusive");
}

TEST_CASE("bell_sweep_weights") {
  const auto w = bell_sweep_weights(3, 0.5);
  REQUIRE(w.size() == 9);
  CHECK(w[0] == 0.5);
  double sum = 0.0;
  for (double x : w) sum += x;
  CHECK(std::abs(sum - 1.0) < 1e-15);
}

TEST_CASE("cli gen-mums writes a set that verifies") {
  const auto path = scratch("mums4.json").string();
  const Run gen = run({"gen-mums", "--d", "4", "--out", path});
  REQUIRE(gen.code == 0);
  CHECK(gen.out.empty());
  const Run ver = run({"verify", path});
  CHECK(ver.code == 0);
  const json report = json::parse(ver.out);
  CHECK(report.at("pass").get<bool>());
  CHECK(std::abs(report.at("inferred_kappa").get<double>() - 0.375) < 1e-9);
}

TEST_CASE("cli gen-mums variants") {
  CHECK(run({"gen-mums", "--d", "3", "--kappa", "0.5"}).code == 0);
  CHECK(run({"gen-mums", "--d", "3", "--kappa", "0.4", "--sign", "-"}).code == 0);
  // The negative root does not reach the optimum.
  CHECK(run({"gen-mums", "--d", "3", "--kappa", "optimal", "--sign", "-"}).code == 2);
  CHECK(run({"gen-mums", "--d", "3", "--max-t"}).code == 0);
  const Run t = run({"gen-mums", "--d", "3", "--t", "0.1"});
  CHECK(t.code == 0);
  CHECK(std::abs(json::parse(t.out).at("kappa").get<double>() - kappa_from_t(3, 0.1)) < 1e-15);

  const Run bad = run({"gen-mums", "--d", "4", "--t", "0.5"});
  CHECK(bad.code == 2);
  CHECK(bad.err.rfind("error: validation: ", 0) == 0);
  CHECK(run({"gen-mums", "--d", "3", "--kappa", "2"}).code == 2);
}

TEST_CASE("cli gen-mub rejects composite dimensions") {
  CHECK(run({"gen-mub", "--d", "5"}).code == 0);
  const Run r = run({"gen-mub", "--d", "6"});
  CHECK(r.code == 2);
  CHECK(r.err.find("gen-mums") != std::string::npos);
}

TEST_CASE("cli verify exits 3 on a broken payload") {
  const auto path = scratch("bad_mums.json");
  json j = json::parse(run({"gen-mums", "--d", "3"}).out);
  j["elements"][0][0]["entries"][0][0] = 0.9;
  std::ofstream(path) << j.dump();
  const Run r = run({"verify", path.string()});
  CHECK(r.code == 3);
  CHECK_FALSE(json::parse(r.out).at("pass").get<bool>());

  const auto garbage = scratch("garbage.json");
  std::ofstream(garbage) << "{not json";
  CHECK(run({"verify", garbage.string()}).code == 2);
  CHECK(run({"verify", "/nonexistent/file.json"}).code == 2);
}

TEST_CASE("cli verify on a generated state and basis") {
  const auto state = scratch("iso.json").string();
  REQUIRE(run({"gen-state", "--family", "isotropic", "--d", "3", "--alpha", "0.3", "--out", state}).code == 0);
  CHECK(run({"verify", state}).code == 0);
  const auto basis = scratch("basis.json").string();
  REQUIRE(run({"gen-basis", "--d", "4", "--out", basis}).code == 0);
  CHECK(run({"verify", basis}).code == 0);
}

TEST_CASE("cli detect") {
  const Run r = run({"detect", "--family", "isotropic", "--d", "6", "--alpha", "0.2", "--pairing", "conjugate"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("verdict") == "entangled");
  CHECK(j.at("criterion") == "mum");

  const Run mub = run({"detect", "--family", "isotropic", "--d", "3", "--alpha", "0.3", "--criterion", "mub"});
  REQUIRE(mub.code == 0);
  CHECK(json::parse(mub.out).at("verdict") == "entangled");

  const Run corr = run({"detect", "--family", "max-entangled", "--d", "3", "--criterion", "correlation"});
  REQUIRE(corr.code == 0);
  const json cj = json::parse(corr.out);
  CHECK(cj.at("verdict") == "inconclusive");
  CHECK(std::abs(cj.at("value").get<double>() - cj.at("bound").get<double>()) < 1e-12);

  const auto p = scratch("p.json");
  std::ofstream(p) << "[0.8,0.1,0.05,0.05]";
  const Run bell = run({"detect", "--family", "bell-diagonal", "--d", "2", "--p", p.string(), "--pairing",
                        "bell-choice"});
  REQUIRE(bell.code == 0);
  CHECK(json::parse(bell.out).at("verdict") == "entangled");

  CHECK(run({"detect", "--family", "isotropic", "--d", "3", "--alpha", "1.5"}).code == 2);
  CHECK(run({"detect", "--family", "isotropic", "--d", "3", "--alpha", "0.5", "--pairing", "sideways"}).code == 2);
}

TEST_CASE("cli sweep") {
  const Run r = run({"sweep", "--family", "isotropic", "--d", "3", "--param", "0:1:0.01"});
  REQUIRE(r.code == 0);
  CHECK(split_lines(r.out).size() == 102);
  CHECK(run({"sweep", "--family", "isotropic", "--d", "3", "--param", "0:2:0.5"}).code == 2);
  CHECK(run({"sweep", "--family", "bell-diagonal", "--d", "3", "--param", "0.2:1:0.1"}).code == 0);
}

TEST_CASE("cli simulate is reproducible") {
  const std::vector<std::string> args{"simulate", "--family", "isotropic", "--d", "3", "--alpha", "0.9",
                                      "--shots", "2000", "--sample-seed", "7"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j.at("counts").size() == 4);
  CHECK(run({"simulate", "--family", "isotropic", "--d", "3", "--alpha", "0.9", "--shots", "10"}).code == 2);
}

TEST_CASE("cli oracle-ppt") {
  const Run r = run({"oracle-ppt", "--family", "isotropic", "--d", "4", "--alpha", "0.21"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK_FALSE(j.at("is_ppt").get<bool>());
}

TEST_CASE("cli usage errors") {
  const Run none = run({});
  CHECK(none.code == 2);
  CHECK(none.err.rfind("error: usage: ", 0) == 0);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"gen-basis"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

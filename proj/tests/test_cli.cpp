#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "etatheta/evaluator.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace etatheta;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ETATHETA_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch(const char* name) {
  return std::filesystem::temp_directory_path() / (std::string("etatheta_cli_") + name);
}

}  // namespace

TEST_CASE("minima prefix for squares") {
  const Run r = run("minima --kind square --limit 10000 --format tsv");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::pair<u64, u64>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'm') continue;
    std::istringstream ls(line);
    u64 m, c;
    ls >> m >> c;
    rows.emplace_back(m, c);
  }
  REQUIRE(rows.size() >= 27);
  CHECK(rows[0] == std::pair<u64, u64>{2, 2});
  CHECK(rows[14] == std::pair<u64, u64>{336, 32});
  CHECK(rows[26] == std::pair<u64, u64>{4032, 192});
  for (const auto& [m, c] : rows) CHECK(m <= 10000);

  // The sieve path gives the same rows.
  CHECK(run("minima --kind square --limit 10000 --format tsv --compute").out == r.out);
  const json j = json::parse(run("minima --kind trigonal --limit 700").out);
  CHECK(j["entries"].back()["m"] == 630);
  CHECK(j["entries"].back()["count"] == 48);
}

TEST_CASE("eval report matches the oracle") {
  const Run r = run("eval --func eta --tau 0 1 --prec 256 --report");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["function"] == "eta");
  CHECK(j["T"].get<u64>() > 0);
  CHECK(j["counts"]["mul"].get<u64>() > 0);

  EvalRequest req;
  req.function = Function::Eta;
  req.tau = testing::make(0, 1, 400);
  req.prec = 256;
  const auto oracle = eval_naive_oracle(req);
  Complex got(256);
  mpfr_set_str(got.re.get(), j["values"][0]["re_hex"].get<std::string>().c_str(), 16, MPFR_RNDN);
  mpfr_set_str(got.im.get(), j["values"][0]["im_hex"].get<std::string>().c_str(), 16, MPFR_RNDN);
  CHECK(log2_abs_diff(got, oracle[0].value) < -256 + 16);
  // Gamma(1/4) / (2 pi^(3/4)) = 0.76822542232605665901...
  CHECK(j["values"][0]["re"].get<std::string>().rfind("0.7682254223260566590", 0) == 0);

  const Run plain = run("eval --func theta-all --q 0.1 0.05 --prec 64 --format plain");
  CHECK(plain.code == 0);
  CHECK(plain.out.find("theta0 ") == 0);
  CHECK(plain.out.find("theta2 ") != std::string::npos);
}

TEST_CASE("addseq emit round trips through validate") {
  for (const char* fmt : {"json", "plain"}) {
    for (const char* kind : {"pentagonal", "trigonal", "almost-square", "quarter-square", "a182568"}) {
      const auto path = scratch("seq");
      const Run e = run(std::string("addseq --kind ") + kind + " --terms 500 --emit --format " + fmt);
      REQUIRE(e.code == 0);
      std::ofstream(path) << e.out;
      const Run v = run("validate " + path.string() + " --format plain");
      CHECK_MESSAGE(v.code == 0, kind << ' ' << fmt << ": " << v.out);
      CHECK(v.out == "valid\n");
    }
  }
  const auto path = scratch("bad");
  std::ofstream(path) << "1 leaf\n2 double 1\n5 add 2 2\n";
  const Run v = run("validate " + path.string());
  CHECK(v.code == 1);
  CHECK(json::parse(v.out)["valid"] == false);
}

TEST_CASE("addseq summary") {
  const json j = json::parse(run("addseq --kind pentagonal --terms 10000 --algo classical").out);
  CHECK(j["normalized"].get<double>() == doctest::Approx(2.0).epsilon(0.02));
  const json s = json::parse(run("addseq --kind pentagonal --terms 1000 --cost schoolbook").out);
  CHECK(s["cost_model"] == "schoolbook");
}

TEST_CASE("verify and bench") {
  const Run v = run("verify --statement pentagonal-add --limit 10000");
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["counterexamples"].empty());
  CHECK(run("verify --statement powers-of-three --limit 120").code == 0);

  const json c = json::parse(run("bench --curve --max-n 1000").out);
  REQUIRE(c["rows"].size() == 7);
  double prev = 10;
  for (const auto& row : c["rows"]) {
    CHECK(row["classical"].get<double>() < 2.0);
    CHECK(row["bsgs"].get<double>() < prev);
    prev = row["bsgs"].get<double>();
  }

  const json t = json::parse(run("bench --tables --max-bits 10000").out);
  REQUIRE(t["rows"].size() == 9);
  for (const auto& row : t["rows"]) {
    if (row["table"] == "eta" && row["bits"] == 10000) CHECK(row["T"] == 1080);
    if (row["table"] == "theta-simultaneous" && row["bits"] == 10000) CHECK(row["T"] == 2162);
  }
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("eval --func eta --prec 64").code == 2);
  CHECK(run("eval --func eta --tau 0 1 --q 0 0 --prec 64").code == 2);
  CHECK(run("addseq --kind pentagonal --terms 10 --algo fancy").code == 2);
  CHECK(run("bench").code == 2);
  CHECK(run("validate /nonexistent/file").code == 2);

  const Run neg = run("eval --func eta --tau 0 -1 --prec 64");
  CHECK(neg.code == 1);
  const json e = json::parse(neg.out);
  CHECK(e["error"]["code"] == "NotUpperHalfPlane");
  CHECK(run("eval --func eta --tau 0 1 --prec 4").code == 1);
  CHECK(run("eval --func sine --tau 0 1 --prec 64").code == 2);
  CHECK(run("minima --kind cubic --limit 10").code == 2);
  CHECK(run("verify --statement nonsense").code == 2);
  CHECK(json::parse(run("minima --kind quarter-square --limit 10").out)["error"]["code"] == "UnsupportedKind");
}

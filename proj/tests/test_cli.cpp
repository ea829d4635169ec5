#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "smc/io.hpp"

namespace fs = std::filesystem;
using smcalg_cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "smcalg");
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return (fs::path(SMCALG_FIXTURE_DIR) / name).string(); }

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("check accepts every structure fixture") {
  for (const auto& e : fs::directory_iterator(SMCALG_FIXTURE_DIR)) {
    if (e.path().extension() != ".smc") continue;
    CAPTURE(e.path().string());
    auto r = call({"check", "--structure", e.path().string()});
    CHECK(r.code == smcalg_cli::kOk);
    CHECK(contains(r.out, "hexagon: ok"));
  }
}

TEST_CASE("check reads stdin and flags a broken commutativity") {
  std::string text = smc::read_file(fx("std-f3z2.smc"));
  CHECK(call({"check"}, text).code == smcalg_cli::kOk);
  auto S = smc::parse_structure(text);
  // -1 still intertwines and squares to 1, but the hexagon needs +1
  S.c(0, 0) = 2;
  S.c(1, 1) = 2;
  auto r = call({"check"}, smc::serialize_structure(S));
  CHECK(r.code == smcalg_cli::kVerifyFailed);
  CHECK(contains(r.out, "FAIL"));
  CHECK(contains(r.out, "witness:"));
}

TEST_CASE("malformed input exits with the parse code") {
  auto r = call({"check"}, "begin structure\nname: x\n");
  CHECK(r.code == smcalg_cli::kParseError);
  CHECK(contains(r.err, "line"));
  CHECK(call({"bogus"}).code == smcalg_cli::kParseError);
  CHECK(call({"classify"}).code == smcalg_cli::kParseError);
  CHECK(call({"construct", "--family", "thm32", "--field", "6"}).code == smcalg_cli::kParseError);
  CHECK(call({"construct", "--family", "thm32", "--field", "2", "--params", "b1=2"}).code ==
        smcalg_cli::kParseError);
}

TEST_CASE("construct output round-trips through check") {
  for (const std::vector<std::string> extra :
       {std::vector<std::string>{"--family", "h0", "--field", "2"},
        {"--family", "h1", "--field", "2"},
        {"--family", "thm32", "--field", "4", "--params", "beta=2"},
        {"--family", "char-ne2", "--field", "3", "--module", fx("f3z2-kminus.mod"), "--mirror"},
        {"--family", "hopf", "--hopf", fx("h1.hopf")},
        {"--family", "tensor", "--ring", fx("f3z2.alg")}}) {
    std::vector<std::string> args{"construct"};
    args.insert(args.end(), extra.begin(), extra.end());
    auto c = call(args);
    REQUIRE(c.code == smcalg_cli::kOk);
    CHECK(call({"check"}, c.out).code == smcalg_cli::kOk);
  }
}

TEST_CASE("construct refuses incoherent parameters") {
  auto r = call({"construct", "--family", "thm32", "--field", "2", "--params", "b1=1,beta=1"});
  CHECK(r.code == smcalg_cli::kVerifyFailed);
}

TEST_CASE("classify writes a report that check re-verifies") {
  const auto out = fs::temp_directory_path() / "smcalg-cli-report.txt";
  auto r = call({"classify", "--ring", fx("f2x2.alg"), "--fastpath", "--out", out.string()});
  REQUIRE(r.code == smcalg_cli::kOk);
  CHECK(contains(r.out, "classes: "));
  auto c = call({"check", "--report", out.string()});
  CHECK(c.code == smcalg_cli::kOk);
  CHECK(contains(c.out, "verified"));
  fs::remove(out);
}

TEST_CASE("classify is identical across shard counts") {
  auto a = call({"classify", "--ring", fx("f3z2.alg"), "--max-lambda-dim", "2", "--shards", "1"});
  auto b = call({"classify", "--ring", fx("f3z2.alg"), "--max-lambda-dim", "2", "--shards", "4"});
  REQUIRE(a.code == smcalg_cli::kOk);
  CHECK(a.out == b.out);
}

TEST_CASE("equiv prints a witness that check accepts") {
  auto e = call({"equiv", fx("hopf-h1.smc"), fx("h1-f2.smc")});
  REQUIRE(e.code == smcalg_cli::kOk);
  REQUIRE(e.out.rfind("equivalent\n", 0) == 0);
  const std::string witness = e.out.substr(std::string("equivalent\n").size());
  const auto path = fs::temp_directory_path() / "smcalg-cli-witness.txt";
  smc::write_file(path.string(), witness);
  CHECK(call({"check", "--witness", path.string()}).code == smcalg_cli::kOk);
  fs::remove(path);
  auto n = call({"equiv", fx("h0-f2.smc"), fx("h1-f2.smc")});
  CHECK(n.code == smcalg_cli::kOk);
  CHECK(contains(n.out, "inequivalent"));
}

TEST_CASE("picard, modules, tensor and audit") {
  auto p = call({"picard", "--ring", fx("f4x2.alg")});
  CHECK(p.code == smcalg_cli::kOk);
  CHECK(contains(p.out, "elements: 3"));
  auto m = call({"modules", "--ring", fx("f2x2.alg"), "--dim", "2"});
  CHECK(m.code == smcalg_cli::kOk);
  // x acts as zero or as one Jordan block
  CHECK(contains(m.out, "classes: 2"));
  auto t = call({"tensor", fx("f2x2-lambda-h0.mod"), fx("f2x2-lambda-h0.mod"), "--slot", "1"});
  CHECK(t.code == smcalg_cli::kOk);
  CHECK(contains(t.out, "fold: 3"));
  CHECK(call({"tensor", fx("f2x2-lambda-h0.mod"), fx("f2x2-lambda-h0.mod"), "--slot", "3"}).code ==
        smcalg_cli::kParseError);
  auto a = call({"audit", fx("std-f3z2.smc")});
  CHECK(a.code == smcalg_cli::kOk);
  CHECK(contains(a.out, "reflection: ok"));
}

TEST_CASE("budgets exit with the budget code") {
  CHECK(call({"classify", "--ring", fx("f3z2.alg")}).code == smcalg_cli::kBudget);
  setenv("SMCALG_BUDGET", "1", 1);
  auto r = call({"classify", "--ring", fx("f2x2.alg")});
  unsetenv("SMCALG_BUDGET");
  CHECK(r.code == smcalg_cli::kBudget);
}

#include "doctest.h"

#include <filesystem>

#include "smc/constructions.hpp"
#include "smc/errors.hpp"
#include "smc/io.hpp"

using namespace smc;
namespace fs = std::filesystem;

namespace {

std::vector<fs::path> fixtures(const std::string& ext) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(SMCALG_FIXTURE_DIR))
    if (e.path().extension() == ext) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

template <class Parse, class Ser>
void round_trip(const std::string& ext, Parse parse, Ser ser) {
  const auto files = fixtures(ext);
  CHECK(!files.empty());
  for (const auto& p : files) {
    CAPTURE(p.string());
    const std::string text = read_file(p.string());
    const std::string once = ser(parse(text));
    CHECK(once == text);
    CHECK(ser(parse(once)) == once);
  }
}

void expect_error_at(const std::string& text, int line) {
  try {
    parse_algebra(text);
    FAIL("accepted malformed input");
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() >= 1);
  }
}

const char* kF2 =
    "begin algebra\n"
    "label: F2\n"
    "field: 2 1\n"
    "dim: 1\n"
    "names: 1\n"
    "unit: 1\n"
    "mul: 1 1\n"
    "  1\n"
    "generators: 0\n"
    "relations: 0\n"
    "end algebra\n";

}  // namespace

TEST_CASE("algebra fixtures round-trip byte for byte") {
  round_trip(".alg", parse_algebra, [](const AlgebraPtr& R) { return serialize_algebra(*R); });
}

TEST_CASE("module fixtures round-trip byte for byte") {
  round_trip(".mod", parse_bimodule, [](const BimodulePtr& M) { return serialize_bimodule(*M); });
}

TEST_CASE("structure fixtures round-trip and stay coherent") {
  round_trip(".smc", parse_structure, [](const SmcStructure& S) { return serialize_structure(S); });
  for (const auto& p : fixtures(".smc")) {
    CAPTURE(p.string());
    CHECK(coherence_report(parse_structure(read_file(p.string()))).clean());
  }
}

TEST_CASE("Hopf fixtures round-trip and verify") {
  round_trip(".hopf", parse_hopf, [](const HopfAlgebra& H) { return serialize_hopf(H); });
  for (const auto& p : fixtures(".hopf")) CHECK(verify_hopf(parse_hopf(read_file(p.string()))).empty());
}

TEST_CASE("in-memory structures survive serialization") {
  auto k = Field::make(2, 2);
  auto S = thm32_structure({k, 0, 2, 0});
  auto T = parse_structure(serialize_structure(S));
  CHECK(T.a == S.a);
  CHECK(T.l == S.l);
  CHECK(T.c == S.c);
  CHECK(T.name == S.name);
  CHECK(T.ring->field().order() == 4);
}

TEST_CASE("witness files carry both structures") {
  auto k = Field::make(2, 2);
  auto P = picard_enumerate(make_quotient_algebra(k, {0, 0, 1}), 2);
  auto S = thm32_structure({k, 0, 1, 0});
  auto T = thm32_structure({k, 0, 2, 0});
  auto w = equiv_test(S, T, P);
  REQUIRE(w.has_value());
  const std::string text = serialize_witness({S, T, *w});
  auto back = parse_witness(text);
  CHECK(serialize_witness(back) == text);
  CHECK(check_witness(back.source, back.target, back.witness).empty());
}

TEST_CASE("parse errors report line and column") {
  expect_error_at("", 1);
  expect_error_at("begin algebra\nlabel: F2\nfield: 4 1\n", 3);
  std::string bad = kF2;
  bad.replace(bad.find("dim: 1"), 6, "dim: x");
  expect_error_at(bad, 4);
  bad = kF2;
  bad.replace(bad.find("  1\n"), 4, "  1 1\n");
  expect_error_at(bad, 8);
  bad = kF2;
  bad.resize(bad.size() - std::string("end algebra\n").size());
  CHECK_THROWS_AS(parse_algebra(bad), ParseError);
  CHECK_NOTHROW(parse_algebra(kF2));
}

TEST_CASE("hash is FNV-1a") {
  CHECK(text_hash("") == "cbf29ce484222325");
  CHECK(text_hash("a") == "af63dc4c8601ec8c");
}

TEST_CASE("write_file replaces atomically") {
  const auto p = fs::temp_directory_path() / "smcalg-io-test.txt";
  write_file(p.string(), "one\n");
  write_file(p.string(), "two\n");
  CHECK(read_file(p.string()) == "two\n");
  fs::remove(p);
  CHECK_THROWS(read_file(p.string()));
}

#include "doctest.h"

#include "smc/classify.hpp"
#include "smc/errors.hpp"

using namespace smc;

namespace {

AlgebraPtr dual(FieldPtr k) { return make_quotient_algebra(k, {0, 0, 1}); }

std::vector<std::string> keys(const ClassificationReport& r) {
  std::vector<std::string> out;
  for (const auto& c : r.classes) out.push_back(c.key);
  return out;
}

}  // namespace

TEST_CASE("every field has exactly one class, the standard one") {
  for (auto k : {Field::make(2), Field::make(3), Field::make(5), Field::make(2, 2)}) {
    CAPTURE(k->order());
    auto r = classify(make_field_algebra(k));
    REQUIRE(r.classes.size() == 1);
    CHECK(r.classes[0].standard);
    CHECK(r.classes[0].audit.has_value());
    CHECK(r.classes[0].audit->clean());
    CHECK(r.picard_count == 1);
    CHECK(reverify_report(parse_report(render_report(r))).empty());
  }
}

TEST_CASE("the dual numbers are recognised only in their standard presentation") {
  CHECK(is_char2_dual_numbers(*dual(Field::make(2))));
  CHECK(is_char2_dual_numbers(*dual(Field::make(2, 2))));
  CHECK_FALSE(is_char2_dual_numbers(*dual(Field::make(3))));
  CHECK_FALSE(is_char2_dual_numbers(*make_group_algebra(Field::make(2), {2})));
  CHECK_FALSE(is_char2_dual_numbers(*make_field_algebra(Field::make(2))));
  CHECK_THROWS_AS(classify_fastpath_char2(dual(Field::make(3))), InvalidArgument);
}

TEST_CASE("generic search and fast path agree on F2[x]/(x^2)") {
  auto R = dual(Field::make(2));
  auto fast = classify_fastpath_char2(R);
  ClassificationConfig cfg;
  cfg.max_lambda_dim = 4;
  cfg.max_unit_dim = 2;
  auto slow = classify(R, cfg);
  REQUIRE(fast.classes.size() == slow.classes.size());
  CHECK(fast.shapes == slow.shapes);
  auto P = picard_enumerate(R, 2);
  for (const auto& f : fast.classes) {
    int matches = 0;
    for (const auto& s : slow.classes)
      if (equiv_test(f.representative, s.representative, P)) ++matches;
    CHECK(matches == 1);
  }
}

TEST_CASE("fast path reports rejected candidates") {
  CHECK(classify_fastpath_char2(dual(Field::make(2))).stats.candidates_rejected == 3);
  CHECK(classify_fastpath_char2(dual(Field::make(2, 2))).stats.candidates_rejected == 15);
}

TEST_CASE("reports are byte-identical across shard counts") {
  auto R = dual(Field::make(2));
  std::vector<std::string> texts;
  for (int shards : {1, 4, 8}) {
    ClassificationConfig cfg;
    cfg.shards = shards;
    cfg.max_lambda_dim = 4;
    cfg.max_unit_dim = 2;
    auto r = classify(R, cfg);
    r.config.shards = 1;
    texts.push_back(render_report(r));
  }
  CHECK(texts[0] == texts[1]);
  CHECK(texts[0] == texts[2]);
}

TEST_CASE("pruning does not change the classes") {
  auto R = make_group_algebra(Field::make(3), {2});
  ClassificationConfig a;
  a.max_lambda_dim = 2;
  a.max_unit_dim = 2;
  ClassificationConfig b = a;
  b.prune = false;
  auto pa = classify(R, a), pb = classify(R, b);
  CHECK(keys(pa) == keys(pb));
  CHECK(pb.stats.pairs >= pa.stats.solved_pairs);
}

TEST_CASE("rendered reports parse back and re-verify") {
  auto r = classify_fastpath_char2(dual(Field::make(2, 2)));
  const std::string text = render_report(r);
  auto p = parse_report(text);
  CHECK(p.class_count == static_cast<int>(r.classes.size()));
  CHECK(p.shapes == r.shapes);
  CHECK(reverify_report(p).empty());
  CHECK(render_report(r) == text);
}

TEST_CASE("a tampered representative fails re-verification") {
  auto r = classify_fastpath_char2(dual(Field::make(2)));
  auto p = parse_report(render_report(r));
  REQUIRE(!p.representatives.empty());
  auto& S = p.representatives.back();
  S.c(0, 0) = S.ring->field().add(S.c(0, 0), 1);
  CHECK_FALSE(reverify_report(p).empty());
}

TEST_CASE("budgets abort the search") {
  ClassificationConfig cfg;
  cfg.enumerate.budget = 1;
  cfg.max_lambda_dim = 4;
  CHECK_THROWS_AS(classify(dual(Field::make(2)), cfg), BudgetExceeded);
}

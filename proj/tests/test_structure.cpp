#include "doctest.h"

#include "oracles.hpp"
#include "smc/constructions.hpp"
#include "smc/enumerate.hpp"

using namespace smc;

namespace {

std::vector<BimodulePtr> modules_up_to_2(const AlgebraPtr& R) {
  std::vector<BimodulePtr> out{zero_bimodule(R, 0)};
  for (int d = 1; d <= 2; ++d) {
    auto v = enumerate_left_modules(R, d);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::vector<SmcStructure> verified_corpus() {
  auto F2 = Field::make(2), F3 = Field::make(3);
  auto D = make_quotient_algebra(F2, {0, 0, 1});
  auto G = make_group_algebra(F3, {2});
  auto km = enumerate_left_modules(G, 1).back();
  auto S = char_ne2_structure(G, km);
  return {standard_structure(make_field_algebra(F2)),
          standard_structure(D),
          hopf_structure(char2_hopf(F2, 0)),
          hopf_structure(char2_hopf(F2, 1)),
          thm32_structure({F2, 0, 1, 0}),
          standard_structure(G),
          char_ne2_structure(G, zero_bimodule(G, 0)),
          S,
          char_ne2_mirror(S)};
}

long long hom_size(const BimodulePtr& A, const BimodulePtr& B) {
  return oracle::ipow(A->field().order(), static_cast<int>(hom_basis(*A, *B, {}).size()));
}

}  // namespace

TEST_CASE("standard structures are coherent") {
  auto F2 = Field::make(2), F3 = Field::make(3);
  for (auto R : {make_field_algebra(F2), make_field_algebra(F3), make_quotient_algebra(F2, {0, 0, 1}),
                 make_quotient_algebra(F3, {0, 0, 1}), make_group_algebra(F3, {2})}) {
    CAPTURE(R->label());
    auto S = standard_structure(R);
    CHECK(validate_structure(S).empty());
    auto r = coherence_report(S);
    CHECK(r.pentagon);
    CHECK(r.unit);
    CHECK(r.hexagon);
    CHECK(r.involutive);
    CHECK(r.witnesses.empty());
    CHECK(S.lambda()->dim() == R->dim());  // R itself with both slots
    CHECK(S.unit()->dim() == R->dim());
  }
}

TEST_CASE("solver finds the single structure on F2") {
  auto R = make_field_algebra(Field::make(2));
  auto L = regular_bimodule(R, 2);
  auto K = enumerate_left_modules(R, 1).front();
  auto all = solve_coherence(L, K);
  REQUIRE(all.size() == 1);
  CHECK(coherence_report(all[0]).clean());
}

TEST_CASE("solver output is coherent and independent of sharding") {
  auto D = make_quotient_algebra(Field::make(2), {0, 0, 1});
  auto L = thm32_lambda(D, 0);
  auto K = enumerate_left_modules(D, 1).front();
  auto one = solve_coherence(L, K);
  SolveOptions o;
  o.shards = 4;
  auto four = solve_coherence(L, K, o);
  REQUIRE(one.size() == four.size());
  CHECK(!one.empty());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].a == four[i].a);
    CHECK(one[i].c == four[i].c);
    CHECK(coherence_report(one[i]).clean());
  }
}

TEST_CASE("tampered associators are caught with a witness") {
  auto F2 = Field::make(2);
  auto S = thm32_structure({F2, 0, 0, 0});
  int caught = 0, total = 0;
  for (int r = 0; r < S.a.rows(); ++r)
    for (int c = 0; c < S.a.cols(); ++c) {
      auto T = S;
      T.a(r, c) = F2->add(T.a(r, c), 1);
      ++total;
      if (!validate_structure(T).empty()) {
        ++caught;
        continue;
      }
      auto rep = coherence_report(T);
      if (!rep.clean()) {
        CHECK(!rep.witnesses.empty());
        CHECK(rep.witnesses.front().basis_index >= 0);
        ++caught;
      }
    }
  CHECK(caught == total);
}

TEST_CASE("a sign on the commutativity breaks the hexagon") {
  auto F3 = Field::make(3);
  auto S = standard_structure(make_field_algebra(F3));
  S.c(0, 0) = 2;
  auto r = coherence_report(S);
  CHECK_FALSE(r.hexagon);
  CHECK(r.involutive);  // (-1)^2 = 1, but the hexagon forces c = 1
}

TEST_CASE("smash products are symmetric and unital") {
  for (const auto& S : verified_corpus()) {
    CAPTURE(S.name);
    const auto mods = modules_up_to_2(S.ring);
    for (const auto& A : mods) {
      CHECK(smash(S, S.unit(), A).module()->dim() == A->dim());
      for (const auto& B : mods) {
        auto ab = smash(S, A, B).module();
        auto ba = smash(S, B, A).module();
        CHECK(validate_bimodule(*ab).empty());
        CHECK(ab->dim() == ba->dim());
        CHECK(iso_test(ab, ba, {}).has_value());
      }
    }
  }
}

TEST_CASE("smash of identities is the identity") {
  for (const auto& S : verified_corpus()) {
    const auto mods = modules_up_to_2(S.ring);
    for (const auto& A : mods)
      for (const auto& B : mods) {
        auto sm = smash(S, A, B);
        CHECK(smash_map(sm, sm, Matrix::identity(A->dim()), Matrix::identity(B->dim())) ==
              Matrix::identity(sm.module()->dim()));
      }
  }
}

TEST_CASE("adjunction cardinalities agree for all modules of dimension at most 2") {
  int checked = 0;
  for (const auto& S : verified_corpus()) {
    CAPTURE(S.name);
    if (S.ring->dim() > 2) continue;
    const auto mods = modules_up_to_2(S.ring);
    for (const auto& A : mods)
      for (const auto& B : mods)
        for (const auto& P : mods) {
          auto ab = smash(S, A, B).module();
          auto F = internal_hom(S, B, P);
          CHECK(hom_size(ab, P) == hom_size(A, F));
          ++checked;
        }
  }
  CHECK(checked > 100);
}

#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "smc/audit.hpp"
#include "smc/constructions.hpp"
#include "smc/enumerate.hpp"

using namespace smc;

namespace {

std::vector<SmcStructure> corpus() {
  auto F2 = Field::make(2), F3 = Field::make(3), F4 = Field::make(2, 2);
  auto D = make_quotient_algebra(F2, {0, 0, 1});
  auto G = make_group_algebra(F3, {2});
  std::vector<SmcStructure> out{standard_structure(make_field_algebra(F2)),
                                standard_structure(D),
                                thm32_structure({F2, 0, 0, 0}),
                                thm32_structure({F2, 0, 1, 0}),
                                thm32_structure({F2, 1, 0, 0}),
                                thm32_structure({F4, 0, 1, 0}),
                                standard_structure(G),
                                char_ne2_structure(G, zero_bimodule(G, 0))};
  for (auto& M : enumerate_left_modules(G, 1)) out.push_back(char_ne2_mirror(char_ne2_structure(G, M)));
  return out;
}

const AuditItem& item(const AuditReport& r, const std::string& name) {
  for (const auto& i : r.items)
    if (i.name == name) return i;
  FAIL("missing audit item " << name);
  return r.items.front();
}

int subspace_count(const Field& F, int m, const std::vector<Matrix>& tables) {
  // every subspace is the column space of some m x m matrix
  std::set<std::vector<Elem>> seen;
  oracle::for_each_matrix(F, m, m, [&](const Matrix& B) {
    std::set<std::vector<Elem>> span;
    oracle::for_each_matrix(F, m, 1, [&](const Matrix& c) { span.insert(oracle::matmul(F, B, c).data()); });
    for (const auto& v : span)
      for (const auto& t : tables) {
        Matrix col(m, 1, v);
        if (!span.count(oracle::matmul(F, t, col).data())) return;
      }
    std::vector<Elem> key;
    for (const auto& v : span) key.insert(key.end(), v.begin(), v.end());
    seen.insert(key);
  });
  return static_cast<int>(seen.size());
}

}  // namespace

TEST_CASE("verified structures pass every applicable audit item") {
  AuditOptions o;
  o.seed = oracle::test_seed();
  for (const auto& S : corpus()) {
    CAPTURE(S.name);
    auto r = structural_audit(S, o);
    for (const auto& i : r.items) {
      CAPTURE(i.name);
      CAPTURE(i.detail);
      CHECK(i.pass);
    }
    CHECK(r.clean());
  }
}

TEST_CASE("reflection runs on at least a hundred random maps per structure") {
  AuditOptions o;
  o.seed = oracle::test_seed();
  for (const auto& S : corpus()) {
    auto r = structural_audit(S, o);
    const auto& it = item(r, "reflection");
    CHECK(it.applicable);
    CHECK(std::stoi(it.detail) >= 100);
  }
}

TEST_CASE("smash with the regular module reflects zero, iso and onto") {
  std::mt19937_64 rng(oracle::test_seed());
  for (const auto& S : corpus()) {
    CAPTURE(S.name);
    const auto& R = S.ring;
    const Field& F = R->field();
    std::vector<BimodulePtr> mods{S.unit()};
    for (int d = 1; d <= 2; ++d)
      for (auto& M : enumerate_left_modules(R, d)) mods.push_back(M);
    auto reg = regular_bimodule(R, 0);
    for (int trial = 0; trial < 100; ++trial) {
      const auto& A = mods[rng() % mods.size()];
      const auto& B = mods[rng() % mods.size()];
      Matrix f(B->dim(), A->dim());
      for (const auto& b : hom_basis(*A, *B, {})) f = la::add(F, f, la::scale(F, static_cast<Elem>(rng() % F.order()), b));
      auto sa = smash(S, A, reg), sb = smash(S, B, reg);
      const Matrix g = smash_map(sa, sb, f, Matrix::identity(R->dim()));
      CHECK(f.is_zero() == g.is_zero());
      CHECK((A->dim() == B->dim() && oracle::invertible(F, f)) ==
            (sa.module()->dim() == sb.module()->dim() && oracle::invertible(F, g)));
      CHECK((oracle::rank(F, f) == B->dim()) == (oracle::rank(F, g) == sb.module()->dim()));
    }
  }
}

TEST_CASE("endomorphisms of the unit are central and commutative") {
  for (const auto& S : corpus()) {
    auto r = structural_audit(S);
    CHECK(item(r, "endomorphisms central").pass);
    const auto End = hom_basis(*S.unit(), *S.unit(), {});
    const Field& F = S.ring->field();
    for (const auto& a : End)
      for (const auto& b : End) CHECK(oracle::matmul(F, a, b) == oracle::matmul(F, b, a));
    CHECK(End.size() <= static_cast<std::size_t>(analyze_ring(*S.ring).center.cols()));
  }
}

TEST_CASE("ideal quotient applies over the reduced ring F3[Z/2]") {
  auto G = make_group_algebra(Field::make(3), {2});
  for (const auto& S : {standard_structure(G), char_ne2_structure(G, zero_bimodule(G, 0))}) {
    auto r = structural_audit(S);
    const auto& it = item(r, "ideal quotient");
    CHECK(it.applicable);
    CHECK(it.pass);
  }
  auto D = make_quotient_algebra(Field::make(2), {0, 0, 1});
  CHECK_FALSE(item(structural_audit(standard_structure(D)), "ideal quotient").applicable);
}

TEST_CASE("simple rings have simple units after Morita transport") {
  auto k = Field::make(2);
  auto T = morita_transport(standard_structure(make_field_algebra(k)), matrix_context(k, 2));
  auto r = structural_audit(T);
  const auto& it = item(r, "simple unit");
  CHECK(it.applicable);
  CHECK(it.pass);
  CHECK(r.clean());
}

TEST_CASE("two-sided ideals by brute force") {
  auto F2 = Field::make(2), F3 = Field::make(3);
  CHECK(two_sided_ideals(*make_quotient_algebra(F2, {0, 0, 1})).size() == 3);
  CHECK(two_sided_ideals(*make_group_algebra(F3, {2})).size() == 4);
  CHECK(two_sided_ideals(*make_matrix_algebra(F2, 2)).size() == 2);
  CHECK(two_sided_ideals(*make_field_algebra(F3)).size() == 2);
}

TEST_CASE("invariant subspaces agree with exhaustive search") {
  auto F2 = Field::make(2);
  auto D = make_quotient_algebra(F2, {0, 0, 1});
  for (int m = 1; m <= 3; ++m)
    for (const auto& M : enumerate_left_modules(D, m)) {
      const auto subs = invariant_subspaces(*F2, m, M->left().gens);
      CHECK(static_cast<int>(subs.size()) == subspace_count(*F2, m, M->left().gens));
    }
}

TEST_CASE("submodules and quotients have complementary dimensions") {
  auto F3 = Field::make(3);
  auto G = make_group_algebra(F3, {2});
  auto M = enumerate_left_modules(G, 2).front();
  for (const auto& U : invariant_subspaces(*F3, 2, M->left().gens)) {
    auto sub = submodule(*M, U);
    auto quo = quotient_module(*M, U);
    CHECK(sub->dim() + quo->dim() == 2);
    CHECK(validate_bimodule(*sub).empty());
    CHECK(validate_bimodule(*quo).empty());
  }
}

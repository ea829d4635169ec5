#include "doctest.h"

#include "oracles.hpp"
#include "smc/constructions.hpp"
#include "smc/enumerate.hpp"
#include "smc/errors.hpp"

using namespace smc;

namespace {

Vec image_of(const SmcStructure& S, int ambient) {
  const Field& F = S.ring->field();
  Vec v(S.spaces->da.dim(), 0);
  accumulate(F, 1, S.spaces->da.project(ambient), v);
  return la::apply(F, S.a, v);
}

Vec target(const SmcStructure& S, const std::vector<std::pair<int, Elem>>& terms) {
  const Field& F = S.ring->field();
  Vec v(S.spaces->ca.dim(), 0);
  for (auto [ambient, coeff] : terms) accumulate(F, coeff, S.spaces->ca.project(ambient), v);
  return v;
}

Vec column(const Matrix& m, int c) { return m.column(c); }

// Which right slot of Lambda sends m to n under x, and which sends it to xm + b n.
struct Slots {
  int first = -1, second = -1;
};

Slots find_slots(const NFoldBimodule& L) {
  Slots s;
  for (int t = 0; t < 2; ++t) {
    const Vec img = column(L.right(t).basis[1], 0);
    if (img == Vec{0, 0, 1, 0})
      s.second = t;
    else
      s.first = t;
  }
  return s;
}

}  // namespace

TEST_CASE("standard structure on F2[x]/(x^2) is coherent") {
  auto k = Field::make(2);
  auto R = make_quotient_algebra(k, {0, 0, 1});
  auto S = standard_structure(R);
  CHECK(coherence_report(S).clean());
}

TEST_CASE("exactly two of the sixteen comultiplication patterns on x are Hopf") {
  auto k = Field::make(2);
  auto R = make_quotient_algebra(k, {0, 0, 1});
  std::vector<Vec> accepted;
  oracle::for_each_matrix(*k, 4, 1, [&](const Matrix& coeffs) {
    HopfAlgebra H{R, Matrix(4, 2), Vec{1, 0}, Matrix::identity(2)};
    H.delta(0, 0) = 1;
    for (int i = 0; i < 4; ++i) H.delta(i, 1) = coeffs(i, 0);
    if (verify_hopf(H).empty()) accepted.push_back(coeffs.data());
  });
  REQUIRE(accepted.size() == 2);
  CHECK(accepted[0] == Vec{0, 1, 1, 0});
  CHECK(accepted[1] == Vec{0, 1, 1, 1});
  CHECK(char2_hopf(k, 0).delta.column(1) == accepted[0]);
  CHECK(char2_hopf(k, 1).delta.column(1) == accepted[1]);
}

TEST_CASE("Hopf structures H0 and H1 are coherent") {
  auto k = Field::make(2);
  for (int a : {0, 1}) {
    auto H = char2_hopf(k, a);
    CHECK(verify_hopf(H).empty());
    CHECK(is_cocommutative(H));
    auto S = hopf_structure(H);
    CHECK(coherence_report(S).clean());
    CHECK(S.unit()->dim() == 1);
    CHECK(S.lambda()->dim() == 4);
  }
}

TEST_CASE("group algebras are Hopf algebras with coherent structures") {
  for (int p : {2, 3, 5}) {
    auto H = group_hopf(Field::make(p), {2});
    CHECK(verify_hopf(H).empty());
    CHECK(coherence_report(hopf_structure(H)).clean());
  }
}

TEST_CASE("thm32 parameters that pass coherence read back unchanged") {
  for (auto k : {Field::make(2), Field::make(2, 2)}) {
    int accepted = 0;
    for (int b1 : {0, 1})
      for (Elem beta = 0; beta < k->order(); ++beta)
        for (Elem gamma = 0; gamma < (b1 ? 1 : k->order()); ++gamma) {
          CAPTURE(b1);
          CAPTURE(int(beta));
          CAPTURE(int(gamma));
          auto S = thm32_structure({k, b1, beta, gamma, false});
          CHECK(validate_structure(S).empty());
          if (!coherence_report(S).clean()) continue;
          ++accepted;
          auto r = read_thm32(S);
          CHECK(r.b1 == b1);
          CHECK(r.beta == beta);
          CHECK(r.gamma == gamma);
        }
    CHECK(accepted > 0);
  }
}

TEST_CASE("stored tables satisfy the normal-form identities") {
  auto k = Field::make(2);
  const std::vector<Thm32Params> ps{{k, 0, 0, 0}, {k, 0, 1, 0}, {k, 1, 0, 0}};
  for (const auto& p : ps) {
    CAPTURE(p.b1);
    CAPTURE(int(p.beta));
    auto S = thm32_structure(p);
    const auto& L = *S.lambda();
    const auto slots = find_slots(L);
    REQUIRE(slots.first >= 0);
    REQUIRE(slots.second >= 0);
    // m.x = xm + (1 + b1 x) n
    const Vec mx = column(L.right(slots.first).basis[1], 0);
    CHECK(mx == Vec{0, 1, 1, static_cast<Elem>(p.b1)});
    // c(m) = m + beta x n and c(n) = m.x
    CHECK(column(S.c, 0) == Vec{1, 0, 0, p.beta});
    CHECK(column(S.c, 2) == mx);
    // l(m (x) 1) = 1, l(n (x) 1) = 0
    const auto& dl = S.spaces->dl;
    Vec m1(dl.dim(), 0), n1(dl.dim(), 0);
    accumulate(*k, 1, dl.project(0), m1);
    accumulate(*k, 1, dl.project(2), n1);
    CHECK(la::apply(*k, S.l, m1) == Vec{1, 0});
    CHECK(la::apply(*k, S.l, n1) == Vec{0, 0});
    // a(m (x) m) = m (x) m + gamma x(n (x) n); a(n (x) m) = n (x) m + m (x) n + b1 n (x) n
    CHECK(image_of(S, 0) == target(S, {{0, 1}, {14, p.gamma}}));
    CHECK(image_of(S, 8) == target(S, {{8, 1}, {2, 1}, {10, static_cast<Elem>(p.b1)}}));
  }
}

TEST_CASE("gamma is only accepted in the H0 shape") {
  auto k = Field::make(2);
  CHECK_THROWS_AS(thm32_structure({k, 1, 0, 1, false}), InvalidArgument);
}

TEST_CASE("hexagon rules out nonzero gamma and beta in the H1 shape over F2") {
  auto k = Field::make(2);
  auto g = coherence_report(thm32_structure({k, 0, 0, 1, false}));
  CHECK(g.pentagon);
  CHECK(g.unit);
  CHECK_FALSE(g.hexagon);
  auto b = coherence_report(thm32_structure({k, 1, 1, 0, false}));
  CHECK(b.pentagon);
  CHECK_FALSE(b.hexagon);
}

TEST_CASE("verifying constructors refuse incoherent parameters") {
  auto k = Field::make(2);
  CHECK_THROWS_AS(thm32_structure({k, 1, 1, 0, true}), VerificationError);
  CHECK_THROWS_AS(thm32_structure({k, 2, 0, 0, true}), InvalidArgument);
  CHECK_THROWS_AS(thm32_structure({Field::make(3), 0, 0, 0, true}), InvalidArgument);
}

TEST_CASE("char ne 2 structures on modules of dimension at most 1") {
  auto G = make_group_algebra(Field::make(3), {2});
  std::vector<BimodulePtr> mods{zero_bimodule(G, 0)};
  for (auto& M : enumerate_left_modules(G, 1)) mods.push_back(M);
  for (const auto& M : mods) {
    auto S = char_ne2_structure(G, M);
    CHECK(coherence_report(S).clean());
    CHECK(S.unit()->dim() == 1);
    CHECK(S.unit()->left().gens[0](0, 0) == 1);
    auto T = char_ne2_mirror(S);
    CHECK(coherence_report(T).clean());
    CHECK(T.unit()->left().gens[0](0, 0) == 2);
    // k_- ^ k_- = M
    auto km = enumerate_left_modules(G, 1).back();
    CHECK(iso_test(smash(S, km, km).module(), M, {}).has_value());
  }
}

TEST_CASE("char ne 2 constructor rejects characteristic 2 and folded input") {
  auto G2 = make_group_algebra(Field::make(2), {2});
  CHECK_THROWS_AS(char_ne2_structure(G2, zero_bimodule(G2, 0)), InvalidArgument);
  auto G3 = make_group_algebra(Field::make(3), {2});
  CHECK_THROWS_AS(char_ne2_structure(G3, regular_bimodule(G3, 1)), InvalidArgument);
}

TEST_CASE("Morita transport along the identity context keeps the dimensions") {
  auto R = make_quotient_algebra(Field::make(2), {0, 0, 1});
  auto S = hopf_structure(char2_hopf(Field::make(2), 1));
  auto ctx = identity_context(R);
  CHECK(validate_context(ctx).empty());
  auto T = morita_transport(S, ctx);
  CHECK(coherence_report(T).clean());
  CHECK(T.unit()->dim() == S.unit()->dim());
  CHECK(T.lambda()->dim() == S.lambda()->dim());
  CHECK(iso_test(T.lambda(), S.lambda(), {0, 1}).has_value());
}

TEST_CASE("Morita transport from F2 to 2x2 matrices") {
  auto k = Field::make(2);
  auto ctx = matrix_context(k, 2);
  CHECK(validate_context(ctx).empty());
  auto T = morita_transport(standard_structure(make_field_algebra(k)), ctx);
  CHECK(coherence_report(T).clean());
  CHECK(T.unit()->dim() == 2);
  CHECK(T.lambda()->dim() == 8);
  // Lambda' = Q (x) P (x) P over k with Q, P of dimension 2
  CHECK(T.lambda()->dim() == ctx.Q->dim() * ctx.P->dim() * ctx.P->dim());
}

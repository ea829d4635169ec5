#include "doctest.h"

#include "oracles.hpp"
#include "smc/enumerate.hpp"
#include "smc/errors.hpp"
#include "smc/tensor.hpp"

using namespace smc;

namespace {

std::vector<AlgebraPtr> small_rings() {
  auto F2 = Field::make(2), F3 = Field::make(3), F4 = Field::make(2, 2);
  return {make_field_algebra(F2),          make_field_algebra(F3),        make_quotient_algebra(F2, {0, 0, 1}),
          make_quotient_algebra(F4, {0, 0, 1}), make_group_algebra(F3, {2}), make_group_algebra(F2, {2, 2}),
          make_matrix_algebra(F2, 2),      make_quotient_algebra(F2, {1, 1, 1})};
}

}  // namespace

TEST_CASE("constructed algebras satisfy the axioms") {
  for (const auto& R : small_rings()) {
    CAPTURE(R->label());
    CHECK(R->verify().empty());
    CHECK(R->has_presentation());
    CHECK(static_cast<int>(R->basis_words().size()) == R->dim());
    CHECK(oracle::invertible(R->field(), R->basis_in_words()));
  }
}

TEST_CASE("dual numbers multiply as expected") {
  auto R = make_quotient_algebra(Field::make(2), {0, 0, 1});
  CHECK(R->dim() == 2);
  CHECK(R->product(1, 1) == Vec{0, 0});
  CHECK(R->product(0, 1) == Vec{0, 1});
  CHECK(R->is_commutative());
  CHECK(R->label() == "F2[x]/(x^2)");
}

TEST_CASE("matrix algebra is not commutative and has a one dimensional center") {
  auto R = make_matrix_algebra(Field::make(2), 2);
  CHECK_FALSE(R->is_commutative());
  auto c = analyze_ring(*R);
  CHECK(c.center.cols() == 1);
  CHECK(c.idempotents.size() == 2);
}

TEST_CASE("central idempotents and units by brute force") {
  auto F3 = Field::make(3);
  auto G = make_group_algebra(F3, {2});
  auto c = analyze_ring(*G);
  CHECK(c.idempotents.size() == 4);  // F3 x F3
  CHECK(c.units_listed);
  CHECK(c.units.size() == 4);

  auto D = make_quotient_algebra(Field::make(2), {0, 0, 1});
  auto d = analyze_ring(*D);
  CHECK(d.idempotents.size() == 2);
  CHECK(d.units.size() == 2);
}

TEST_CASE("same_ring compares multiplication tables") {
  auto F2 = Field::make(2);
  auto a = make_quotient_algebra(F2, {0, 0, 1});
  auto b = make_group_algebra(F2, {2});
  CHECK_FALSE(same_ring(*a, *b));  // basis (1, x) versus (1, g)
  CHECK(same_ring(*a, *make_quotient_algebra(F2, {0, 0, 1})));
}

TEST_CASE("malformed tables are rejected") {
  auto F2 = Field::make(2);
  CHECK_THROWS_AS(Algebra(F2, {}, {}, {}), InvalidArgument);
  CHECK_THROWS_AS(Algebra(F2, {{Vec{1}}}, Vec{1}, {"1", "x"}), InvalidArgument);
  // the declared unit does not act as one
  Algebra bad(F2, {{Vec{1, 0}, Vec{0, 1}}, {Vec{0, 1}, Vec{0, 0}}}, Vec{0, 1}, {"a", "b"});
  CHECK_FALSE(bad.verify().empty());
}

TEST_CASE("regular bimodules validate and tensor with the identity") {
  for (const auto& R : small_rings()) {
    CAPTURE(R->label());
    auto reg = regular_bimodule(R, 1, {"A"});
    CHECK(validate_bimodule(*reg).empty());
    auto T = tensor_over_R(reg, 0, reg);
    CHECK(T.result()->dim() == R->dim());
    CHECK(collapse_left(T.expr).rows() == R->dim());
    CHECK(oracle::invertible(R->field(), collapse_left(T.expr)));
  }
}

TEST_CASE("fold tensor dimensions match the balancing-relation count") {
  auto F2 = Field::make(2);
  auto R = make_quotient_algebra(F2, {0, 0, 1});
  std::vector<BimodulePtr> ones, twos;
  for (int d = 1; d <= 2; ++d) {
    auto o = enumerate_bimodules(R, 1, d);
    ones.insert(ones.end(), o.begin(), o.end());
    auto t = enumerate_bimodules(R, 2, d);
    twos.insert(twos.end(), t.begin(), t.end());
  }
  int checked = 0;
  for (const auto& M : twos)
    for (int s = 0; s < 2; ++s)
      for (const auto& N : ones) {
        auto T = tensor_over_R(M, s, N);
        CHECK(T.result()->dim() == oracle::tensor_dim(*M, s, *N));
        CHECK(T.result()->fold() == 2);
        CHECK(validate_bimodule(*T.result()).empty());
        ++checked;
      }
  CHECK(checked > 20);
}

TEST_CASE("fold tensor is associative up to dimension") {
  auto R = make_group_algebra(Field::make(3), {2});
  auto mods = enumerate_bimodules(R, 1, 2);
  for (const auto& A : mods)
    for (const auto& B : mods)
      for (const auto& C : mods) {
        auto left = tensor_over_R(tensor_over_R(A, 0, B).result(), 0, C).result()->dim();
        auto right = tensor_over_R(A, 0, tensor_over_R(B, 0, C).result()).result()->dim();
        CHECK(left == right);
      }
}

TEST_CASE("bimodule validation catches non-commuting actions") {
  auto F2 = Field::make(2);
  auto R = make_quotient_algebra(F2, {0, 0, 1});
  Matrix x1(2, 2, {0, 1, 0, 0}), x2(2, 2, {0, 0, 1, 0});
  auto L = action_from_generators(R, 2, {x1}, false);
  auto rho = action_from_generators(R, 2, {x2}, true);
  NFoldBimodule bad(2, L, {rho}, {"A"});
  CHECK_FALSE(validate_bimodule(bad).empty());
}

#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "smc/errors.hpp"
#include "smc/matrix.hpp"

using namespace smc;

TEST_CASE("field axioms hold for small prime powers") {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {2, 3}, {3, 2}}) {
    CAPTURE(p);
    CAPTURE(e);
    auto F = Field::make(p, e);
    CHECK(F->order() == oracle::ipow(p, e));
    CHECK(F->verify().empty());
  }
}

TEST_CASE("primitive element generates the unit group") {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 2}, {3, 1}, {5, 1}, {3, 2}, {7, 1}}) {
    auto F = Field::make(p, e);
    std::set<Elem> seen;
    Elem g = 1;
    for (int i = 0; i < F->order() - 1; ++i) {
      seen.insert(g);
      g = F->mul(g, F->primitive());
    }
    CHECK(g == 1);
    CHECK(static_cast<int>(seen.size()) == F->order() - 1);
  }
}

TEST_CASE("F4 has a primitive cube root of unity") {
  auto F = Field::make(2, 2);
  int roots = 0;
  for (Elem a = 2; a < 4; ++a) {
    CHECK(F->mul(a, a) == F->add(a, 1));
    CHECK(F->pow(a, 3) == 1);
    ++roots;
  }
  CHECK(roots == 2);
}

TEST_CASE("non prime powers are rejected") {
  CHECK_THROWS_AS(Field::make(4), InvalidArgument);
  CHECK_THROWS_AS(Field::make(6), InvalidArgument);
  CHECK_THROWS_AS(Field::make(2, 9), InvalidArgument);
}

TEST_CASE("rank, nullspace and inverse agree with elimination by hand") {
  std::mt19937_64 rng(17);
  for (int q : {2, 3, 4, 5}) {
    auto F = q == 4 ? Field::make(2, 2) : Field::make(q);
    for (int trial = 0; trial < 60; ++trial) {
      const int r = 1 + static_cast<int>(rng() % 6), c = 1 + static_cast<int>(rng() % 6);
      Matrix a(r, c);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) a(i, j) = static_cast<Elem>(rng() % q);
      const int rk = oracle::rank(*F, a);
      CHECK(la::rank(*F, a) == rk);
      const auto N = la::nullspace(*F, a);
      CHECK(N.cols() == c - rk);
      if (N.cols() > 0) {
        CHECK(oracle::matmul(*F, a, N).is_zero());
        CHECK(oracle::rank(*F, N) == N.cols());
      }
      if (r == c) {
        const auto inv = la::inverse(*F, a);
        CHECK(inv.has_value() == (rk == r));
        if (inv) CHECK(oracle::matmul(*F, a, *inv) == Matrix::identity(r));
      }
    }
  }
}

TEST_CASE("solve finds a solution exactly when one exists") {
  auto F = Field::make(3);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix a(3, 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = static_cast<Elem>(rng() % 3 == 0 ? rng() % 3 : 0);
    Vec b(3);
    for (auto& x : b) x = static_cast<Elem>(rng() % 3);
    bool exists = false;
    oracle::for_each_matrix(*F, 4, 1, [&](const Matrix& x) {
      if (la::apply(*F, a, x.data()) == b) exists = true;
    });
    const auto s = la::solve(*F, a, b);
    CHECK(s.has_value() == exists);
    if (s) CHECK(la::apply(*F, a, *s) == b);
  }
}

TEST_CASE("subspace basis tracks span membership") {
  auto F = Field::make(2);
  SubspaceBasis B(*F, 3);
  CHECK(B.insert({1, 1, 0}));
  CHECK(B.insert({0, 1, 1}));
  CHECK_FALSE(B.insert({1, 0, 1}));
  CHECK(B.contains({1, 0, 1}));
  CHECK_FALSE(B.contains({1, 0, 0}));
  CHECK(B.dimension() == 2);
}

#include "legs.hpp"

namespace smc {

namespace detail {

int first_difference(const Matrix& x, const Matrix& y) {
  for (int j = 0; j < x.cols(); ++j)
    for (int i = 0; i < x.rows(); ++i)
      if (x(i, j) != y(i, j)) return j;
  return -1;
}

namespace {

Block a_on(const StructureSpaces& sp, const Matrix& a, std::vector<int> src, std::vector<int> dst) {
  return Block{std::move(src), &sp.da, a, &sp.ca, std::move(dst)};
}

Block c_on(const StructureSpaces& sp, const Matrix& c, int leaf) { return Block{{leaf}, &sp.lam, c, &sp.lam, {leaf}}; }

}  // namespace

Legs pentagon_legs(const Field& F, const StructureSpaces& sp, const Matrix& a) {
  const Matrix a1 = induced_map(sp.p0, sp.p1, {a_on(sp, a, {0, 1}, {0, 1})}, {{2, 2}});
  const Matrix t = induced_map(sp.p1, sp.p2, {}, {{0, 0}, {1, 2}, {2, 1}});
  const Matrix a3 = induced_map(sp.p2, sp.p3, {a_on(sp, a, {0, 1}, {0, 1})}, {{2, 2}});
  const Matrix b1 = induced_map(sp.p0, sp.q1, {a_on(sp, a, {1, 2}, {1, 2})}, {{0, 0}});
  const Matrix b2 = induced_map(sp.q1, sp.q2, {a_on(sp, a, {0, 1}, {0, 1})}, {{2, 2}});
  const Matrix b3 = induced_map(sp.q2, sp.p3, {a_on(sp, a, {1, 2}, {1, 2})}, {{0, 0}});
  return {la::mul(F, a3, la::mul(F, t, a1)), la::mul(F, b3, la::mul(F, b2, b1))};
}

Legs unit_legs(const Field& F, const StructureSpaces& sp, const Matrix& a, const Matrix& l, const Matrix& c) {
  const Block l_on{{1, 2}, &sp.dl, l, &sp.reg, {1}};
  const Matrix x1 = induced_map(sp.u0, sp.u1, {a_on(sp, a, {0, 1}, {0, 1})}, {{2, 2}});
  const Matrix x2 = induced_map(sp.u1, sp.u2, {l_on}, {{0, 0}});
  const Matrix y1 = induced_map(sp.u0, sp.v0, {c_on(sp, c, 1)}, {{0, 0}, {2, 2}});
  const Matrix y2 = induced_map(sp.v0, sp.v1, {l_on}, {{0, 0}});
  return {la::mul(F, collapse_right(sp.u2), la::mul(F, x2, x1)), la::mul(F, collapse_right(sp.v1), la::mul(F, y2, y1))};
}

Legs hexagon_legs(const Field& F, const StructureSpaces& sp, const Matrix& a, const Matrix& c) {
  const Matrix c_inner = induced_map(sp.da, sp.da, {c_on(sp, c, 1)}, {{0, 0}});
  const Matrix c_inner2 = induced_map(sp.ca, sp.ca, {c_on(sp, c, 1)}, {{0, 0}});
  const Matrix c_outer = induced_map(sp.ca, sp.da, {c_on(sp, c, 0)}, {{1, 1}});
  return {la::mul(F, c_inner2, la::mul(F, a, c_inner)), la::mul(F, a, la::mul(F, c_outer, a))};
}

}  // namespace detail

CoherenceReport coherence_report(const SmcStructure& S) {
  const Field& F = S.ring->field();
  const StructureSpaces& sp = *S.spaces;
  CoherenceReport rep;
  auto record = [&](bool& flag, const char* name, const detail::Legs& legs) {
    const int w = detail::first_difference(legs.clockwise, legs.counter);
    flag = w < 0;
    if (!flag) rep.witnesses.push_back({name, w, "the two composites differ on this basis element"});
  };
  record(rep.pentagon, "pentagon", detail::pentagon_legs(F, sp, S.a));
  record(rep.unit, "unit", detail::unit_legs(F, sp, S.a, S.l, S.c));
  record(rep.hexagon, "hexagon", detail::hexagon_legs(F, sp, S.a, S.c));
  record(rep.involutive, "involutivity", {la::mul(F, S.c, S.c), Matrix::identity(S.c.rows())});
  return rep;
}

}  // namespace smc

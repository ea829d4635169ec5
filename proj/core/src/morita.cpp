#include "smc/constructions.hpp"
#include "smc/errors.hpp"

namespace smc {

namespace {

TensorExpr pair_expr(const BimodulePtr& X, const BimodulePtr& Y) {
  return TensorExpr({Leaf{X, {"X"}}, Leaf{Y, {"Y"}}}, {{0, 0, 1}});
}

Matrix inverse_or_throw(const Field& F, const Matrix& m, const char* what) {
  auto inv = la::inverse(F, m);
  if (!inv) throw VerificationError(std::string(what) + " is not invertible");
  return *inv;
}

}  // namespace

std::vector<std::string> validate_context(const MoritaContext& ctx) {
  std::vector<std::string> out;
  for (const auto& e : validate_bimodule(*ctx.P)) out.push_back("P: " + e);
  for (const auto& e : validate_bimodule(*ctx.Q)) out.push_back("Q: " + e);
  if (!out.empty()) return out;
  if (ctx.P->fold() != 1 || ctx.Q->fold() != 1) return {"P and Q must be 1-fold bimodules"};
  if (!same_ring(*ctx.P->algebra(), *ctx.R) || !same_ring(*ctx.P->right(0).algebra, *ctx.T) ||
      !same_ring(*ctx.Q->algebra(), *ctx.T) || !same_ring(*ctx.Q->right(0).algebra, *ctx.R))
    return {"P must be an R-T bimodule and Q a T-R bimodule"};
  const TensorExpr pq = pair_expr(ctx.P, ctx.Q);
  const TensorExpr qp = pair_expr(ctx.Q, ctx.P);
  auto regR = regular_bimodule(ctx.R, 1);
  auto regT = regular_bimodule(ctx.T, 1);
  for (const auto& e : check_intertwiner({pq.module(), regR, {0}, ctx.pq})) out.push_back("P(x)Q -> R: " + e);
  for (const auto& e : check_intertwiner({qp.module(), regT, {0}, ctx.qp})) out.push_back("Q(x)P -> T: " + e);
  if (!out.empty()) return out;
  if (!la::invertible(ctx.R->field(), ctx.pq)) out.push_back("P(x)Q -> R is not invertible");
  if (!la::invertible(ctx.R->field(), ctx.qp)) out.push_back("Q(x)P -> T is not invertible");
  if (!out.empty()) return out;

  // (pq)p' = p(qp') on P (x) Q (x) P
  const Field& F = ctx.R->field();
  const TensorExpr ppp({Leaf{ctx.P, {"X"}}, Leaf{ctx.Q, {"Y"}}, Leaf{ctx.P, {"Z"}}}, {{0, 0, 1}, {1, 0, 2}});
  const TensorExpr rp({Leaf{regR, {"X"}}, Leaf{ctx.P, {"Z"}}}, {{0, 0, 1}});
  const TensorExpr pt({Leaf{ctx.P, {"X"}}, Leaf{regT, {"Z"}}}, {{0, 0, 1}});
  const TensorExpr r1(Leaf{regR, {"X"}});
  const TensorExpr t1(Leaf{regT, {"Z"}});
  const Matrix left = la::mul(F, collapse_left(rp), induced_map(ppp, rp, {Block{{0, 1}, &pq, ctx.pq, &r1, {0}}}, {{2, 1}}));
  const Matrix right = la::mul(F, collapse_right(pt), induced_map(ppp, pt, {Block{{1, 2}, &qp, ctx.qp, &t1, {1}}}, {{0, 0}}));
  if (left != right) out.push_back("the two witnesses are not compatible on P(x)Q(x)P");
  return out;
}

MoritaContext matrix_context(FieldPtr k, int n) {
  auto R = make_field_algebra(k);
  auto T = make_matrix_algebra(k, n);
  std::vector<Matrix> row(n * n, Matrix(n, n)), col(n * n, Matrix(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      row[a * n + b](b, a) = 1;  // e_a . E_ab = e_b
      col[a * n + b](a, b) = 1;  // E_ab e_b = e_a
    }
  std::vector<Matrix> scal(1, Matrix::identity(n));
  auto P = std::make_shared<const NFoldBimodule>(n, action_from_basis(R, n, scal, false),
                                                 std::vector<ActionPtr>{action_from_basis(T, n, row, true)},
                                                 std::vector<std::string>{"A"});
  auto Q = std::make_shared<const NFoldBimodule>(n, action_from_basis(T, n, col, false),
                                                 std::vector<ActionPtr>{action_from_basis(R, n, scal, true)},
                                                 std::vector<std::string>{"A"});
  const TensorExpr pq = pair_expr(P, Q);
  const TensorExpr qp = pair_expr(Q, P);
  Matrix mpq(1, pq.dim()), mqp(n * n, qp.dim());
  for (int b = 0; b < pq.dim(); ++b) {
    const auto d = pq.section_digits(b);
    mpq(0, b) = d[0] == d[1] ? 1 : 0;
  }
  for (int b = 0; b < qp.dim(); ++b) {
    const auto d = qp.section_digits(b);
    mqp(d[0] * n + d[1], b) = 1;
  }
  return {R, T, P, Q, mpq, mqp};
}

MoritaContext identity_context(const AlgebraPtr& R) {
  auto P = regular_bimodule(R, 1);
  auto Q = regular_bimodule(R, 1);
  const Matrix m = collapse_right(pair_expr(P, Q));
  return {R, R, P, Q, m, m};
}

SmcStructure morita_transport(const SmcStructure& S, const MoritaContext& ctx) {
  if (auto errs = validate_context(ctx); !errs.empty()) throw InvalidArgument("invalid Morita context: " + errs.front());
  if (!same_ring(*S.ring, *ctx.R)) throw InvalidArgument("structure and context over different algebras");
  const Field& F = S.ring->field();
  const auto& sp = *S.spaces;
  const BimodulePtr& L = S.lambda();
  const BimodulePtr& K = S.unit();
  const BimodulePtr& P = ctx.P;
  const BimodulePtr& Q = ctx.Q;
  const BimodulePtr& regR = sp.regular;
  auto regR1 = regular_bimodule(ctx.R, 1);
  using V = std::vector<std::string>;

  const TensorExpr E({{Q, V{"X"}}, {L, V{"Y", "Z"}}, {P, V{"B"}}, {P, V{"A"}}}, {{0, 0, 1}, {1, 0, 2}, {1, 1, 3}});
  const TensorExpr EK({{Q, V{"X"}}, {K, V{}}}, {{0, 0, 1}});
  const BimodulePtr& L2 = E.module();
  const BimodulePtr& K2 = EK.module();
  auto sp2 = make_spaces(L2, K2);
  const TensorExpr lam2(Leaf{L2, V{"B", "A"}});
  const TensorExpr k2(Leaf{K2, V{}});
  const TensorExpr lam(Leaf{L, V{"B", "A"}});
  const TensorExpr pq = pair_expr(P, Q);
  const TensorExpr qp = pair_expr(Q, P);
  const TensorExpr r1(Leaf{regR1, V{"X"}});
  const TensorExpr rL({{regR1, V{"X"}}, {L, V{"Y", "Z"}}}, {{0, 0, 1}});
  const TensorExpr rK({{regR1, V{"X"}}, {K, V{}}}, {{0, 0, 1}});
  const Matrix pq_map = ctx.pq;
  const Matrix id_e = Matrix::identity(E.dim());
  const Matrix id_k = Matrix::identity(EK.dim());

  // c': apply c to Lambda, then swap the two P leaves back
  const TensorExpr Es({{Q, V{"X"}}, {L, V{"Y", "Z"}}, {P, V{"B"}}, {P, V{"A"}}}, {{0, 0, 1}, {1, 1, 2}, {1, 0, 3}});
  const Matrix c1 = induced_map(E, Es, {Block{{1}, &lam, S.c, &lam, {1}}}, {{0, 0}, {2, 2}, {3, 3}});
  const Matrix c2 = induced_map(Es, E, {}, {{0, 0}, {1, 1}, {2, 3}, {3, 2}});
  Matrix c = la::mul(F, c2, c1);

  // l'
  const TensorExpr Bl({{Q, V{}}, {L, V{}}, {P, V{}}, {P, V{}}, {Q, V{}}, {K, V{}}},
                      {{0, 0, 1}, {1, 0, 2}, {1, 1, 3}, {3, 0, 4}, {4, 0, 5}});
  const Matrix flat_l = induced_map(Bl, sp2->dl, {Block{{0, 1, 2, 3}, &E, id_e, &lam2, {0}}, Block{{4, 5}, &EK, id_k, &k2, {1}}}, {});
  const TensorExpr Xl({{Q, V{}}, {L, V{}}, {P, V{}}, {regR1, V{}}, {K, V{}}}, {{0, 0, 1}, {1, 0, 2}, {1, 1, 3}, {3, 0, 4}});
  const TensorExpr Ml({{Q, V{}}, {L, V{}}, {P, V{}}, {K, V{}}}, {{0, 0, 1}, {1, 0, 2}, {1, 1, 3}});
  const TensorExpr k1(Leaf{K, V{}});
  const Matrix wl1 = induced_map(Bl, Xl, {Block{{3, 4}, &pq, pq_map, &r1, {3}}}, {{0, 0}, {1, 1}, {2, 2}, {5, 4}});
  const Matrix wl2 = induced_map(Xl, Ml, {Block{{3, 4}, &rK, collapse_left(rK), &k1, {3}}}, {{0, 0}, {1, 1}, {2, 2}});
  const TensorExpr Yl({{Q, V{}}, {regR, V{"B"}}, {P, V{}}}, {{0, 0, 1}, {1, 0, 2}});
  const Matrix l1 = induced_map(Ml, Yl, {Block{{1, 3}, &sp.dl, S.l, &sp.reg, {1}}}, {{0, 0}, {2, 2}});
  const TensorExpr qr({{Q, V{}}, {regR, V{}}}, {{0, 0, 1}});
  const TensorExpr q1(Leaf{Q, V{}});
  const Matrix l2 = induced_map(Yl, qp, {Block{{0, 1}, &qr, collapse_right(qr), &q1, {0}}}, {{2, 1}});
  Matrix l = la::mul(F, ctx.qp, la::mul(F, l2, la::mul(F, l1, la::mul(F, wl2, la::mul(F, wl1, inverse_or_throw(F, flat_l, "flattening"))))));

  // a'
  const TensorExpr BD({{Q, V{}}, {L, V{}}, {P, V{}}, {P, V{}}, {Q, V{}}, {L, V{}}, {P, V{}}, {P, V{}}},
                      {{0, 0, 1}, {1, 0, 2}, {1, 1, 3}, {3, 0, 4}, {4, 0, 5}, {5, 0, 6}, {5, 1, 7}});
  const TensorExpr BC({{Q, V{}}, {L, V{}}, {P, V{}}, {P, V{}}, {Q, V{}}, {L, V{}}, {P, V{}}, {P, V{}}},
                      {{0, 0, 1}, {1, 0, 2}, {1, 1, 3}, {2, 0, 4}, {4, 0, 5}, {5, 0, 6}, {5, 1, 7}});
  const Matrix flat_d = induced_map(BD, sp2->da, {Block{{0, 1, 2, 3}, &E, id_e, &lam2, {0}}, Block{{4, 5, 6, 7}, &E, id_e, &lam2, {1}}}, {});
  const Matrix flat_c = induced_map(BC, sp2->ca, {Block{{0, 1, 2, 3}, &E, id_e, &lam2, {0}}, Block{{4, 5, 6, 7}, &E, id_e, &lam2, {1}}}, {});
  const TensorExpr XD({{Q, V{}}, {L, V{}}, {P, V{}}, {regR1, V{}}, {L, V{}}, {P, V{}}, {P, V{}}},
                      {{0, 0, 1}, {1, 0, 2}, {1, 1, 3}, {3, 0, 4}, {4, 0, 5}, {4, 1, 6}});
  const TensorExpr MD({{Q, V{}}, {L, V{}}, {P, V{}}, {L, V{}}, {P, V{}}, {P, V{}}},
                      {{0, 0, 1}, {1, 0, 2}, {1, 1, 3}, {3, 0, 4}, {3, 1, 5}});
  const Matrix wd1 = induced_map(BD, XD, {Block{{3, 4}, &pq, pq_map, &r1, {3}}}, {{0, 0}, {1, 1}, {2, 2}, {5, 4}, {6, 5}, {7, 6}});
  const Matrix wd2 = induced_map(XD, MD, {Block{{3, 4}, &rL, collapse_left(rL), &lam, {3}}}, {{0, 0}, {1, 1}, {2, 2}, {5, 4}, {6, 5}});
  const TensorExpr XC({{Q, V{}}, {L, V{}}, {regR1, V{}}, {P, V{}}, {L, V{}}, {P, V{}}, {P, V{}}},
                      {{0, 0, 1}, {1, 0, 2}, {1, 1, 3}, {2, 0, 4}, {4, 0, 5}, {4, 1, 6}});
  const TensorExpr MC({{Q, V{}}, {L, V{}}, {P, V{}}, {L, V{}}, {P, V{}}, {P, V{}}},
                      {{0, 0, 1}, {1, 0, 3}, {1, 1, 2}, {3, 0, 4}, {3, 1, 5}});
  const Matrix wc1 = induced_map(BC, XC, {Block{{2, 4}, &pq, pq_map, &r1, {2}}}, {{0, 0}, {1, 1}, {3, 3}, {5, 4}, {6, 5}, {7, 6}});
  const Matrix wc2 = induced_map(XC, MC, {Block{{2, 4}, &rL, collapse_left(rL), &lam, {3}}}, {{0, 0}, {1, 1}, {3, 2}, {5, 4}, {6, 5}});
  const Matrix am = induced_map(MD, MC, {Block{{1, 3}, &sp.da, S.a, &sp.ca, {1, 3}}}, {{0, 0}, {2, 4}, {4, 5}, {5, 2}});
  const Matrix wd = la::mul(F, wd2, wd1);
  const Matrix wc = la::mul(F, wc2, wc1);
  Matrix a = la::mul(F, flat_c,
                     la::mul(F, inverse_or_throw(F, wc, "associativity witness"),
                             la::mul(F, am, la::mul(F, wd, inverse_or_throw(F, flat_d, "flattening")))));

  SmcStructure out = make_structure(sp2, std::move(a), std::move(l), std::move(c), S.name + " transported");
  if (auto errs = validate_structure(out); !errs.empty()) throw VerificationError("transport: " + errs.front());
  if (!coherence_report(out).clean()) throw VerificationError("transported structure failed coherence");
  return out;
}

}  // namespace smc

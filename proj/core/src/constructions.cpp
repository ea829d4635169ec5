#include "smc/constructions.hpp"

#include <algorithm>

#include "smc/errors.hpp"

namespace smc {

namespace {

void require_coherent(const SmcStructure& S, const char* what) {
  if (auto errs = validate_structure(S); !errs.empty())
    throw VerificationError(std::string(what) + ": " + errs.front());
  const auto rep = coherence_report(S);
  if (!rep.clean())
    throw VerificationError(std::string(what) + ": " + rep.witnesses.front().condition + " fails");
}

Vec project_sparse(const TensorExpr& E, const SparseVec& ambient) {
  const Field& F = E.leaves()[0].module->field();
  Vec out(E.dim(), 0);
  for (const auto& [i, c] : ambient) accumulate(F, c, E.project(i), out);
  return out;
}

// The hom element sending each src vector to its target; throws if none.
Matrix hom_fit(const Field& F, const std::vector<Matrix>& basis, const std::vector<std::pair<Vec, Vec>>& conds) {
  int rows = 0;
  for (const auto& c : conds) rows += static_cast<int>(c.second.size());
  Matrix sys(rows, static_cast<int>(basis.size()));
  Vec rhs;
  int r0 = 0;
  for (const auto& [src, dst] : conds) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Vec img = la::apply(F, basis[k], src);
      for (std::size_t r = 0; r < img.size(); ++r) sys(r0 + static_cast<int>(r), static_cast<int>(k)) = img[r];
    }
    rhs.insert(rhs.end(), dst.begin(), dst.end());
    r0 += static_cast<int>(dst.size());
  }
  const auto coeffs = la::solve(F, sys, rhs);
  if (!coeffs) throw VerificationError("no intertwiner with the prescribed values");
  return combine(F, basis, *coeffs);
}

Matrix diag(const std::vector<Elem>& d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

Vec basis_of(int n, int i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

SmcStructure standard_structure(const AlgebraPtr& R) {
  if (!R->is_commutative()) throw InvalidArgument("the standard tensor needs a commutative algebra");
  auto lambda = regular_bimodule(R, 2, {"B", "A"});
  auto unit = regular_bimodule(R, 0);
  const auto sp = make_spaces(lambda, unit);
  const Field& F = R->field();
  const auto ca_inv = la::inverse(F, collapse_right(sp->ca));
  if (!ca_inv) throw VerificationError("standard associativity is not invertible");
  Matrix a = la::mul(F, *ca_inv, collapse_right(sp->da));
  SmcStructure S = make_structure(sp, std::move(a), collapse_right(sp->dl), Matrix::identity(R->dim()),
                                  "tensor " + R->label());
  require_coherent(S, "standard structure");
  return S;
}

BimodulePtr thm32_lambda(const AlgebraPtr& R, int b1) {
  if (R->field().characteristic() != 2 || R->dim() != 2) throw InvalidArgument("k[x]/(x^2) in characteristic 2 required");
  // basis m, xm, n, xn
  Matrix L(4, 4), s1(4, 4), s0(4, 4);
  L(1, 0) = 1;
  L(3, 2) = 1;
  s1(2, 0) = 1;
  s1(3, 1) = 1;
  s0(1, 0) = 1;
  s0(2, 0) = 1;
  s0(3, 0) = static_cast<Elem>(b1);
  s0(3, 1) = 1;
  s0(3, 2) = 1;
  return std::make_shared<const NFoldBimodule>(
      4, action_from_generators(R, 4, {L}, false),
      std::vector<ActionPtr>{action_from_generators(R, 4, {s0}, true), action_from_generators(R, 4, {s1}, true)},
      std::vector<std::string>{"B", "A"});
}

SmcStructure thm32_structure(const Thm32Params& p) {
  if (!p.field || p.field->characteristic() != 2) throw InvalidArgument("thm32 needs characteristic 2");
  if (p.b1 != 0 && p.b1 != 1) throw InvalidArgument("b1 must be 0 or 1");
  if (p.b1 == 1 && p.gamma != 0) throw InvalidArgument("gamma must vanish when b1 = 1");
  const Field& F = *p.field;
  if (p.beta >= F.order() || p.gamma >= F.order()) throw InvalidArgument("parameter outside the field");
  auto R = make_quotient_algebra(p.field, {0, 0, 1});
  auto lambda = thm32_lambda(R, p.b1);
  auto unit = left_module(R, 1, {Matrix(1, 1)});
  const auto sp = make_spaces(lambda, unit);

  Matrix l(2, sp->dl.dim());
  for (int b = 0; b < sp->dl.dim(); ++b) {
    const int lam = sp->dl.section_digits(b)[0];
    if (lam > 1) throw VerificationError("unexpected unit tensor basis");
    l(lam, b) = 1;
  }

  Vec cm{1, 0, 0, p.beta};
  Matrix c = hom_fit(F, hom_basis(*lambda, *lambda, {1, 0}), {{basis_of(4, 0), cm}});

  // leaves of da and ca are indexed 4*first + second; m, xm, n, xn = 0..3
  auto amb = [](int x, int y) { return 4 * x + y; };
  const Vec mm = project_sparse(sp->da, {{amb(0, 0), 1}});
  const Vec nm = project_sparse(sp->da, {{amb(2, 0), 1}});
  SparseVec t1{{amb(0, 0), 1}};
  if (p.gamma) t1.push_back({amb(3, 2), p.gamma});
  SparseVec t2{{amb(0, 2), 1}, {amb(2, 0), 1}};
  if (p.b1) t2.push_back({amb(2, 2), 1});
  std::sort(t2.begin(), t2.end());
  const auto& da = sp->da.module();
  const auto& ca = sp->ca.module();
  Matrix a = hom_fit(F, hom_basis(*da, *ca, match_labels(*da, *ca)),
                     {{mm, project_sparse(sp->ca, t1)}, {nm, project_sparse(sp->ca, t2)}});

  std::string name = "thm32 b1=" + std::to_string(p.b1) + " beta=" + std::to_string(p.beta) +
                     " gamma=" + std::to_string(p.gamma);
  SmcStructure S = make_structure(sp, std::move(a), std::move(l), std::move(c), std::move(name));
  if (p.verify) require_coherent(S, "thm32 structure");
  return S;
}

Thm32Reading read_thm32(const SmcStructure& S) {
  const AlgebraPtr& R = S.ring;
  const Field& F = R->field();
  Thm32Reading out{-1, 0, 0};
  for (int b1 : {0, 1})
    if (*thm32_lambda(R, b1) == *S.lambda()) out.b1 = b1;
  if (out.b1 < 0) throw InvalidArgument("Lambda is not in the thm32 normal form");
  out.beta = S.c(3, 0);
  const auto& sp = *S.spaces;
  Vec mm(sp.da.dim(), 0);
  accumulate(F, 1, sp.da.project(0), mm);
  Vec img = la::apply(F, S.a, mm);
  Vec base(sp.ca.dim(), 0), tail(sp.ca.dim(), 0);
  accumulate(F, 1, sp.ca.project(0), base);
  accumulate(F, 1, sp.ca.project(4 * 3 + 2), tail);
  for (int i = 0; i < sp.ca.dim(); ++i) img[i] = F.sub(img[i], base[i]);
  for (int i = 0; i < sp.ca.dim(); ++i)
    if (tail[i] != 0) {
      out.gamma = F.mul(img[i], F.inv(tail[i]));
      break;
    }
  return out;
}

SmcStructure char_ne2_structure(const AlgebraPtr& R, const BimodulePtr& M) {
  const Field& F = R->field();
  if (F.characteristic() == 2) throw InvalidArgument("odd characteristic required");
  if (R->dim() != 2 || !R->has_presentation() || R->presentation()->generators.size() != 1)
    throw InvalidArgument("k[Z/2] with one generator required");
  if (M->fold() != 0 || !same_ring(*M->algebra(), *R)) throw InvalidArgument("M must be a left module over R");
  const Vec g = R->presentation()->generators[0];
  if (R->multiply(g, g) != R->unit()) throw InvalidArgument("the generator must square to 1");
  const Elem half = F.inv(2);
  const Elem plus = 1, minus = F.neg(1);

  // M is semisimple; in an eigenbasis g acts diagonally, the +1 part first
  const int m = M->dim();
  std::vector<Elem> signs;
  for (const Elem s : {plus, minus}) {
    Vec e(2, 0);
    for (int i = 0; i < 2; ++i) e[i] = F.mul(half, F.add(R->unit()[i], F.mul(s, g[i])));
    signs.insert(signs.end(), la::rank(F, act(F, M->left(), e)), s);
  }
  const int dim = 3 + m;
  std::vector<Elem> left{plus, minus, minus}, sb{plus, minus, plus}, sa{plus, plus, minus};
  left.insert(left.end(), signs.begin(), signs.end());
  sb.insert(sb.end(), m, minus);
  sa.insert(sa.end(), m, minus);
  auto lambda = std::make_shared<const NFoldBimodule>(
      dim, action_from_generators(R, dim, {diag(left)}, false),
      std::vector<ActionPtr>{action_from_generators(R, dim, {diag(sb)}, true),
                             action_from_generators(R, dim, {diag(sa)}, true)},
      std::vector<std::string>{"B", "A"});
  auto unit = left_module(R, 1, {diag({plus})});
  const auto sp = make_spaces(lambda, unit);

  Matrix l(2, sp->dl.dim());
  for (int b = 0; b < sp->dl.dim(); ++b) {
    const int lam = sp->dl.section_digits(b)[0];
    if (lam > 1) throw VerificationError("unexpected unit tensor basis");
    const Elem s = lam == 0 ? plus : minus;
    for (int i = 0; i < 2; ++i) l(i, b) = F.mul(half, F.add(R->unit()[i], F.mul(s, g[i])));
  }

  Matrix c = Matrix::identity(dim);
  c(1, 1) = c(2, 2) = 0;
  c(2, 1) = c(1, 2) = 1;

  constexpr int u = 0, v = 1, w = 2;
  auto phi = [&](Elem s) { return s == plus ? u : v; };
  Matrix a(sp->ca.dim(), sp->da.dim());
  for (int b = 0; b < sp->da.dim(); ++b) {
    const auto d = sp->da.section_digits(b);
    const int x = d[0], y = d[1];
    const Elem sa_ = sa[y], sb_ = sb[y], sc = sb[x];
    std::pair<int, int> t;
    if (sa_ == plus) t = {phi(left[x]), x};
    else if (sb_ == plus) t = {x, phi(sc)};
    else if (sc == plus) t = {y, w};
    else if (left[y] == plus) t = {w, y};
    else t = {x, y};
    Vec col(sp->ca.dim(), 0);
    accumulate(F, 1, sp->ca.project(t.first * dim + t.second), col);
    a.set_column(b, col);
  }
  SmcStructure S = make_structure(sp, std::move(a), std::move(l), std::move(c),
                                  "char-ne2 M=" + std::to_string(m));
  require_coherent(S, "char-ne2 structure");
  return S;
}

BimodulePtr twist_bimodule(const BimodulePtr& M, const Matrix& theta) {
  const Field& F = M->field();
  auto twist = [&](const Action& a) {
    std::vector<Matrix> tables;
    for (int i = 0; i < theta.cols(); ++i) tables.push_back(act(F, a, theta.column(i)));
    return action_from_basis(a.algebra, M->dim(), std::move(tables), a.anti);
  };
  std::vector<ActionPtr> rights;
  for (int t = 0; t < M->fold(); ++t) rights.push_back(twist(M->right(t)));
  return std::make_shared<const NFoldBimodule>(M->dim(), twist(M->left()), std::move(rights), M->labels());
}

SmcStructure char_ne2_mirror(const SmcStructure& S) {
  const AlgebraPtr& R = S.ring;
  const Field& F = R->field();
  const Vec g = R->presentation()->generators.at(0);
  Matrix theta(2, 2);
  theta.set_column(0, R->unit());
  Vec ng(2);
  for (int i = 0; i < 2; ++i) ng[i] = F.neg(g[i]);
  // theta fixes 1 and sends g to -g; the basis is (1, g)
  if (R->unit() != Vec{1, 0} || g != Vec{0, 1}) throw InvalidArgument("k[Z/2] in the group basis required");
  theta.set_column(1, ng);
  auto sp = make_spaces(twist_bimodule(S.lambda(), theta), twist_bimodule(S.unit(), theta));
  if (sp->da.dim() != S.spaces->da.dim() || sp->dl.dim() != S.spaces->dl.dim())
    throw VerificationError("twisted tensor spaces changed dimension");
  SmcStructure T = make_structure(sp, S.a, la::mul(F, theta, S.l), S.c, S.name + " mirror");
  require_coherent(T, "mirror structure");
  return T;
}

}  // namespace smc

#include "smc/audit.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "smc/enumerate.hpp"
#include "smc/errors.hpp"

namespace smc {

namespace {

Matrix canonical_rows(const Field& F, const std::vector<Vec>& rows, int m) {
  if (rows.empty()) return Matrix(0, m);
  Matrix a(static_cast<int>(rows.size()), m);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < m; ++j) a(i, j) = rows[i][j];
  return la::rref(F, a).reduced;
}

std::vector<Vec> rows_of(const Matrix& a) {
  std::vector<Vec> out;
  for (int i = 0; i < a.rows(); ++i) out.emplace_back(a.row(i).begin(), a.row(i).end());
  return out;
}

Matrix cyclic(const Field& F, const Vec& v, const std::vector<Matrix>& tables) {
  const int m = static_cast<int>(v.size());
  SubspaceBasis B(F, m);
  std::vector<Vec> found, queue{v};
  while (!queue.empty()) {
    Vec x = std::move(queue.back());
    queue.pop_back();
    if (!B.insert(x)) continue;
    found.push_back(x);
    for (const auto& t : tables) queue.push_back(la::apply(F, t, x));
  }
  return canonical_rows(F, found, m);
}

Matrix span_sum(const Field& F, const Matrix& a, const Matrix& b) {
  auto rows = rows_of(a);
  auto more = rows_of(b);
  rows.insert(rows.end(), more.begin(), more.end());
  return canonical_rows(F, rows, a.cols());
}

bool subspace_le(const Field& F, const Matrix& small, const Matrix& big) {
  return span_sum(F, small, big).rows() == big.rows();
}

int dim_image(const Field& F, const Matrix& f) { return la::rank(F, f); }

double ring_order(const Algebra& R) { return space_size(R.field().order(), R.dim()); }

// Element of R represented by a bimodule endomorphism of R_R that commutes
// with right multiplication: g(x) = g(1) x.
Vec image_of_one(const Field& F, const Matrix& g, const Algebra& R) { return la::apply(F, g, R.unit()); }

struct UnitFrame {
  const SmcStructure& S;
  TensorExpr kexpr;
  Matrix linv;
  explicit UnitFrame(const SmcStructure& s)
      : S(s), kexpr(Leaf{s.unit(), {}}), linv(*la::inverse(s.ring->field(), s.l)) {}

  // l (1 (x) f) l^-1 on R
  Matrix conj(const Matrix& f) const {
    const Field& F = S.ring->field();
    const auto& dl = S.spaces->dl;
    const Matrix lf = induced_map(dl, dl, {Block{{1}, &kexpr, f, &kexpr, {1}}}, {{0, 0}});
    return la::mul(F, S.l, la::mul(F, lf, linv));
  }
};

AuditItem reflection(const SmcStructure& S, const AuditOptions& opts) {
  AuditItem it{"reflection", true, true, {}};
  const auto& R = S.ring;
  const Field& F = R->field();
  std::vector<BimodulePtr> mods{S.unit(), regular_bimodule(R, 0)};
  for (int d = 1; d <= opts.module_dim; ++d) {
    auto v = enumerate_left_modules(R, d);
    mods.insert(mods.end(), v.begin(), v.end());
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(mods.size()) - 1);
  std::uniform_int_distribution<int> coeff(0, F.order() - 1);
  int zero = 0, iso = 0, surj = 0, checked = 0;
  auto fail = [&](const std::string& why) {
    if (it.pass) it.detail = why;
    it.pass = false;
  };
  auto test = [&](const BimodulePtr& A, const BimodulePtr& B, const Matrix& f) {
    const TensorExpr a0(Leaf{A, {}});
    const TensorExpr b0(Leaf{B, {}});
    for (int s = 0; s < 2; ++s) {
      const TensorExpr ea({{S.lambda(), {"B", "A"}}, {A, {}}}, {{0, s, 1}});
      const TensorExpr eb({{S.lambda(), {"B", "A"}}, {B, {}}}, {{0, s, 1}});
      const Matrix lf = induced_map(ea, eb, {Block{{1}, &a0, f, &b0, {1}}}, {{0, 0}});
      const std::string where = " (slot " + std::to_string(s + 1) + ")";
      if (f.is_zero() != lf.is_zero()) fail("zero not reflected" + where);
      const bool fi = A->dim() == B->dim() && la::invertible(F, f);
      const bool li = ea.dim() == eb.dim() && la::invertible(F, lf);
      if (fi != li) fail("isomorphism not reflected" + where);
      const bool fs = dim_image(F, f) == B->dim();
      const bool ls = dim_image(F, lf) == eb.dim();
      if (fs != ls) fail("surjection not reflected" + where);
      zero += f.is_zero();
      iso += fi;
      surj += fs;
    }
    ++checked;
  };
  for (const auto& A : mods) test(A, A, Matrix::identity(A->dim()));
  for (int i = 0; i < opts.random_maps; ++i) {
    const auto& A = mods[pick(rng)];
    const auto& B = mods[pick(rng)];
    const auto basis = hom_basis(*A, *B, {});
    Matrix f(B->dim(), A->dim());
    for (const auto& b : basis) f = la::add(F, f, la::scale(F, static_cast<Elem>(coeff(rng)), b));
    test(A, B, f);
  }
  if (it.pass)
    it.detail = std::to_string(checked) + " maps; zero " + std::to_string(zero / 2) + ", iso " +
                std::to_string(iso / 2) + ", onto " + std::to_string(surj / 2);
  return it;
}

AuditItem faithful(const SmcStructure& S) {
  AuditItem it{"faithful", true, true, {}};
  const auto& L = *S.lambda();
  const Field& F = L.field();
  const int d = S.ring->dim();
  auto kernel = [&](const Action& a) {
    std::vector<Vec> cols;
    for (int i = 0; i < d; ++i) cols.push_back(a.basis[i].data());
    return la::nullspace(F, la::from_columns(L.dim() * L.dim(), cols)).cols();
  };
  if (kernel(L.left()) != 0) {
    it.pass = false;
    it.detail = "left annihilator is nonzero";
  }
  for (int s = 0; s < L.fold(); ++s)
    if (kernel(L.right(s)) != 0) {
      it.pass = false;
      it.detail = "slot " + std::to_string(s + 1) + " annihilator is nonzero";
    }
  return it;
}

}  // namespace

std::vector<Matrix> invariant_subspaces(const Field& F, int m, const std::vector<Matrix>& tables) {
  std::set<Matrix> seen;
  std::vector<Matrix> cyclics;
  for_each_vector(F.order(), m, [&](const Vec& v) {
    if (std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; })) return true;
    auto c = cyclic(F, v, tables);
    if (seen.insert(c).second) cyclics.push_back(std::move(c));
    return true;
  });
  std::set<Matrix> all{Matrix(0, m)};
  std::vector<Matrix> frontier{Matrix(0, m)};
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& U : frontier)
      for (const auto& C : cyclics) {
        auto W = span_sum(F, U, C);
        if (all.insert(W).second) next.push_back(std::move(W));
      }
    frontier = std::move(next);
  }
  std::vector<Matrix> out(all.begin(), all.end());
  std::stable_sort(out.begin(), out.end(), [](const Matrix& a, const Matrix& b) { return a.rows() < b.rows(); });
  return out;
}

std::vector<Matrix> two_sided_ideals(const Algebra& R) {
  std::vector<Matrix> tables;
  for (int i = 0; i < R.dim(); ++i) {
    tables.push_back(R.left_regular(i));
    tables.push_back(R.right_regular(i));
  }
  return invariant_subspaces(R.field(), R.dim(), tables);
}

BimodulePtr submodule(const NFoldBimodule& M, const Matrix& rows) {
  if (M.fold() != 0) throw InvalidArgument("submodule takes a left module");
  const Field& F = M.field();
  const int d = rows.rows();
  const Matrix basis = la::transpose(rows);
  std::vector<Matrix> gens;
  for (const auto& g : M.left().gens) {
    Matrix t(d, d);
    for (int j = 0; j < d; ++j) {
      const auto x = la::solve(F, basis, la::apply(F, g, basis.column(j)));
      if (!x) throw InvalidArgument("subspace is not invariant");
      t.set_column(j, *x);
    }
    gens.push_back(std::move(t));
  }
  return left_module(M.algebra(), d, std::move(gens));
}

BimodulePtr quotient_module(const NFoldBimodule& M, const Matrix& rows) {
  if (M.fold() != 0) throw InvalidArgument("quotient takes a left module");
  const Field& F = M.field();
  const int m = M.dim();
  SubspaceBasis B(F, m);
  std::vector<Vec> cols;
  for (int i = 0; i < rows.rows(); ++i) {
    Vec r(rows.row(i).begin(), rows.row(i).end());
    B.insert(r);
    cols.push_back(r);
  }
  const int n = static_cast<int>(cols.size());
  for (int j = 0; j < m; ++j) {
    Vec e(m, 0);
    e[j] = 1;
    if (B.insert(e)) cols.push_back(e);
  }
  const Matrix P = la::from_columns(m, cols);
  const int d = m - n;
  std::vector<Matrix> gens;
  for (const auto& g : M.left().gens) {
    Matrix t(d, d);
    for (int j = 0; j < d; ++j) {
      const auto x = la::solve(F, P, la::apply(F, g, cols[n + j]));
      for (int i = 0; i < d; ++i) t(i, j) = (*x)[n + i];
    }
    gens.push_back(std::move(t));
  }
  return left_module(M.algebra(), d, std::move(gens));
}

AuditReport structural_audit(const SmcStructure& S, const AuditOptions& opts) {
  AuditReport rep;
  const auto& R = *S.ring;
  const Field& F = R.field();
  const auto& K = *S.unit();
  const UnitFrame uf(S);

  rep.items.push_back(reflection(S, opts));
  rep.items.push_back(faithful(S));

  // End(K) -> Z(R)
  const auto end_basis = hom_basis(K, K, {});
  const auto report = analyze_ring(R);
  const Matrix& Z = report.center;
  auto central = [&](const Vec& z) {
    return la::solve(F, Z, z).has_value();
  };
  auto to_center = [&](const Matrix& f) { return image_of_one(F, uf.conj(f), R); };
  {
    AuditItem it{"endomorphisms central", true, true, {}};
    std::vector<Vec> images;
    for (const auto& f : end_basis) {
      const Matrix g = uf.conj(f);
      const Vec z = image_of_one(F, g, R);
      if (g != R.left_mult(z) || !central(z)) {
        it.pass = false;
        it.detail = "an endomorphism of K does not act through a central element";
      }
      images.push_back(z);
    }
    for (std::size_t i = 0; i < end_basis.size(); ++i)
      for (std::size_t j = 0; j < end_basis.size(); ++j) {
        const Matrix fg = la::mul(F, end_basis[i], end_basis[j]);
        if (fg != la::mul(F, end_basis[j], end_basis[i])) {
          it.pass = false;
          it.detail = "End(K) is not commutative";
        }
        if (to_center(fg) != R.multiply(images[i], images[j])) {
          it.pass = false;
          it.detail = "End(K) -> Z(R) is not multiplicative";
        }
      }
    if (!images.empty() && la::rank(F, la::from_columns(R.dim(), images)) != static_cast<int>(images.size())) {
      it.pass = false;
      it.detail = "End(K) -> Z(R) is not injective";
    }
    if (it.pass) it.detail = "dim End(K) = " + std::to_string(end_basis.size());
    rep.items.push_back(it);
  }

  // direct summands
  {
    AuditItem it{"summands", true, true, {}};
    const double size = space_size(F.order(), static_cast<double>(end_basis.size()));
    if (size > static_cast<double>(kExhaustiveCap)) {
      it.applicable = false;
      it.detail = "End(K) too large to scan";
    } else {
      std::vector<std::pair<BimodulePtr, Vec>> seen;
      for_each_combination(F, end_basis, kExhaustiveCap, "summand scan", [&](const Vec&, const Matrix& e) {
        if (la::mul(F, e, e) != e) return true;
        const Vec z = to_center(e);
        if (R.multiply(z, z) != z) {
          it.pass = false;
          it.detail = "summand does not give an idempotent";
        }
        std::vector<Vec> cols;
        for (int j = 0; j < e.cols(); ++j) cols.push_back(e.column(j));
        const auto img = submodule(K, canonical_rows(F, cols, K.dim()));
        for (const auto& [M, w] : seen) {
          const bool iso = M->dim() == img->dim() && iso_test(M, img, {}).has_value();
          if (iso != (w == z)) {
            it.pass = false;
            it.detail = "distinct summand classes share a central idempotent";
          }
        }
        seen.emplace_back(img, z);
        return true;
      });
      if (it.pass) it.detail = std::to_string(seen.size()) + " idempotents";
    }
    rep.items.push_back(it);
  }

  const bool scan = ring_order(R) <= static_cast<double>(opts.ring_scan_cap) &&
                    space_size(F.order(), K.dim()) <= static_cast<double>(opts.ring_scan_cap);
  std::vector<Matrix> subs;
  if (scan) subs = invariant_subspaces(F, K.dim(), K.left().gens);

  // ideal quotient over reduced commutative rings
  {
    AuditItem it{"ideal quotient", true, true, {}};
    bool reduced = R.is_commutative();
    if (reduced && scan) {
      for_each_vector(F.order(), R.dim(), [&](const Vec& r) {
        if (std::all_of(r.begin(), r.end(), [](Elem e) { return e == 0; })) return true;
        Vec p = r;
        for (int i = 0; i <= R.dim(); ++i) p = R.multiply(p, r);
        if (std::all_of(p.begin(), p.end(), [](Elem e) { return e == 0; })) reduced = false;
        return reduced;
      });
    }
    if (!scan || !reduced) {
      it.applicable = false;
      it.detail = !scan ? "ring too large to scan" : "ring not commutative and reduced";
    } else {
      std::vector<Vec> ann_cols;
      {
        std::vector<Vec> cols;
        for (int i = 0; i < R.dim(); ++i) cols.push_back(K.left().basis[i].data());
        const Matrix ns = la::nullspace(F, la::from_columns(K.dim() * K.dim(), cols));
        for (int j = 0; j < ns.cols(); ++j) ann_cols.push_back(ns.column(j));
      }
      const Matrix b = canonical_rows(F, ann_cols, R.dim());
      bool radical = true;
      for_each_vector(F.order(), R.dim(), [&](const Vec& r) {
        const Vec sq = R.multiply(r, r);
        const Matrix with_sq = span_sum(F, b, canonical_rows(F, {sq}, R.dim()));
        const Matrix with_r = span_sum(F, b, canonical_rows(F, {r}, R.dim()));
        if (with_sq.rows() == b.rows() && with_r.rows() != b.rows()) radical = false;
        return radical;
      });
      bool found = false;
      for (const auto& a : two_sided_ideals(R)) {
        if (!subspace_le(F, b, a) || a.rows() - b.rows() != K.dim()) continue;
        // (b : a) = b
        std::vector<Vec> colon;
        {
          for_each_vector(F.order(), R.dim(), [&](const Vec& x) {
            for (int r = 0; r < a.rows(); ++r) {
              Vec av(a.row(r).begin(), a.row(r).end());
              const Vec p = R.multiply(x, av);
              if (span_sum(F, b, canonical_rows(F, {p}, R.dim())).rows() != b.rows()) return true;
            }
            colon.push_back(x);
            return true;
          });
        }
        if (canonical_rows(F, colon, R.dim()) != b) continue;
        const auto Amod = submodule(*regular_bimodule(S.ring, 0), a);
        // b inside a, in a's coordinates
        std::vector<Vec> inner;
        const Matrix abasis = la::transpose(a);
        for (int r = 0; r < b.rows(); ++r) inner.push_back(*la::solve(F, abasis, b.row(r)));
        const auto Q = quotient_module(*Amod, canonical_rows(F, inner, a.rows()));
        if (iso_test(Q, S.unit(), {}).has_value()) {
          found = true;
          break;
        }
      }
      it.pass = radical && found;
      it.detail = !radical ? "ann(K) is not radical" : found ? "K is an ideal quotient a/ann(K)" : "no ideal quotient matches K";
    }
    rep.items.push_back(it);
  }

  // simple rings have simple units
  {
    AuditItem it{"simple unit", true, true, {}};
    if (!scan) {
      it.applicable = false;
      it.detail = "ring too large to scan";
    } else if (two_sided_ideals(R).size() != 2) {
      it.applicable = false;
      it.detail = "ring not simple";
    } else {
      it.pass = subs.size() == 2;
      it.detail = it.pass ? "K is simple" : "K has a nonzero proper submodule";
    }
    rep.items.push_back(it);
  }

  // generation by the factors of l^-1(1)
  {
    AuditItem it{"unit generation", true, true, {}};
    const auto& dl = S.spaces->dl;
    const Vec w = la::apply(F, uf.linv, R.unit());
    std::vector<Vec> gens;
    for (int i = 0; i < dl.dim(); ++i) {
      if (w[i] == 0) continue;
      Vec e(K.dim(), 0);
      e[dl.section_digits(i)[1]] = 1;
      gens.push_back(e);
    }
    SubspaceBasis B(F, K.dim());
    std::vector<Vec> queue = gens;
    while (!queue.empty()) {
      Vec x = std::move(queue.back());
      queue.pop_back();
      if (!B.insert(x)) continue;
      for (const auto& t : K.left().gens) queue.push_back(la::apply(F, t, x));
    }
    it.pass = B.dimension() == K.dim();
    it.detail = std::to_string(gens.size()) + " factors";
    rep.items.push_back(it);
  }

  // submodules -> ideals, principality (data only)
  if (scan) {
    std::map<Matrix, int> ideal_count;
    AuditItem it{"submodule ideals", true, true, {}};
    const auto& dl = S.spaces->dl;
    for (const auto& sub : subs) {
      if (sub.rows() == 0 || sub.rows() == K.dim()) continue;
      ++rep.submodules;
      const auto L = submodule(K, sub);
      const TensorExpr dsub({{S.lambda(), {"B", "K"}}, {L, {}}}, {{0, 1, 1}});
      const TensorExpr lo(Leaf{L, {}});
      const TensorExpr ko(Leaf{S.unit(), {}});
      const Matrix inc = induced_map(dsub, dl, {Block{{1}, &lo, la::transpose(sub), &ko, {1}}}, {{0, 0}});
      const Matrix img = la::mul(F, S.l, inc);
      std::vector<Vec> cols;
      for (int j = 0; j < img.cols(); ++j) cols.push_back(img.column(j));
      const Matrix ideal = canonical_rows(F, cols, R.dim());
      if (ideal.rows() == 0 || ideal.rows() == R.dim()) {
        it.pass = false;
        it.detail = "a nonzero proper submodule gives a trivial ideal";
      }
      ++ideal_count[ideal];
    }
    for (const auto& [ideal, n] : ideal_count) rep.submodule_collisions += n * (n - 1) / 2;
    if (it.pass) it.detail = std::to_string(rep.submodules) + " submodules";
    rep.items.push_back(it);
    bool principal = false;
    for_each_vector(F.order(), K.dim(), [&](const Vec& v) {
      principal = cyclic(F, v, K.left().gens).rows() == K.dim();
      return !principal;
    });
    rep.unit_principal = principal || K.dim() == 0;
  }
  return rep;
}

}  // namespace smc

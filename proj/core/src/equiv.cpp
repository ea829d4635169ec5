#include "smc/equiv.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "legs.hpp"
#include "smc/errors.hpp"

namespace smc {

namespace {

using V = std::vector<std::string>;

TensorExpr pair_expr(const BimodulePtr& X, const BimodulePtr& Y) {
  return TensorExpr({{X, V{"Z"}}, {Y, V{"B"}}}, {{0, 0, 1}});
}

struct Triangle {
  Matrix left, right;  // [X, Y, X] -> X through xy and through yx
};

Triangle triangle(const PicardElement& P, const BimodulePtr& reg) {
  const Field& F = P.X->field();
  const TensorExpr xyx({{P.X, V{"Z"}}, {P.Y, V{"Y"}}, {P.X, V{"B"}}}, {{0, 0, 1}, {1, 0, 2}});
  const TensorExpr xy = pair_expr(P.X, P.Y);
  const TensorExpr yx = pair_expr(P.Y, P.X);
  const TensorExpr r(Leaf{reg, V{"B"}});
  const TensorExpr rx({{reg, V{"Z"}}, {P.X, V{"B"}}}, {{0, 0, 1}});
  const TensorExpr xr({{P.X, V{"Z"}}, {reg, V{"B"}}}, {{0, 0, 1}});
  const Matrix l = la::mul(F, collapse_left(rx), induced_map(xyx, rx, {Block{{0, 1}, &xy, P.xy, &r, {0}}}, {{2, 1}}));
  const Matrix rr = la::mul(F, collapse_right(xr), induced_map(xyx, xr, {Block{{1, 2}, &yx, P.yx, &r, {1}}}, {{0, 0}}));
  return {l, rr};
}

std::vector<Matrix> invertible_in(const Field& F, const std::vector<Matrix>& basis, long long cap, const char* stage,
                                  const std::function<bool(const Matrix&)>& keep, bool first_only) {
  std::vector<Matrix> out;
  for_each_combination(F, basis, cap, stage, [&](const Vec&, const Matrix& m) {
    if (la::invertible(F, m) && keep(m)) {
      out.push_back(m);
      if (first_only) return false;
    }
    return true;
  });
  return out;
}

// All expressions needed to test a candidate (X, eta, m) between S and T.
struct Frame {
  const SmcStructure& S;
  const SmcStructure& T;
  BimodulePtr X;
  BimodulePtr L, G, K, K2;
  TensorExpr gxy, xl, xk, k2;
  TensorExpr u0, e1, u1, u2, u3, u4;
  TensorExpr a0, a1, a2, a3, a4, b1, b2, b3;

  Frame(const SmcStructure& s, const SmcStructure& t, const BimodulePtr& x)
      : S(s),
        T(t),
        X(x),
        L(s.lambda()),
        G(t.lambda()),
        K(s.unit()),
        K2(t.unit()),
        gxy({{G, V{"Y", "X"}}, {X, V{"A"}}, {X, V{"B"}}}, {{0, 1, 1}, {0, 0, 2}}),
        xl({{X, V{"Z"}}, {L, V{"B", "A"}}}, {{0, 0, 1}}),
        xk({{X, V{"Z"}}, {K, V{}}}, {{0, 0, 1}}),
        k2(Leaf{K2, V{}}),
        u0({{G, V{"Y", "K"}}, {K2, V{}}, {X, V{"B"}}}, {{0, 1, 1}, {0, 0, 2}}),
        e1({{t.spaces->regular, V{"Y"}}, {X, V{"B"}}}, {{0, 0, 1}}),
        u1({{G, V{"Y", "X"}}, {X, V{"K"}}, {K, V{}}, {X, V{"B"}}}, {{0, 1, 1}, {1, 0, 2}, {0, 0, 3}}),
        u2({{G, V{"Y", "X"}}, {X, V{"A"}}, {X, V{"B"}}, {K, V{}}}, {{0, 1, 1}, {0, 0, 2}, {1, 0, 3}}),
        u3({{X, V{"Z"}}, {L, V{"B", "K"}}, {K, V{}}}, {{0, 0, 1}, {1, 1, 2}}),
        u4({{X, V{"Z"}}, {s.spaces->regular, V{"B"}}}, {{0, 0, 1}}),
        a0({{G, V{"Z", "G"}}, {G, V{"Y", "X"}}, {X, V{"A"}}, {X, V{"B"}}, {X, V{"C"}}},
           {{0, 1, 1}, {1, 1, 2}, {1, 0, 3}, {0, 0, 4}}),
        a1({{G, V{"Z", "X"}}, {X, V{"X"}}, {L, V{"B", "A"}}, {X, V{"C"}}}, {{0, 1, 1}, {1, 0, 2}, {0, 0, 3}}),
        a2({{G, V{"Z", "X"}}, {X, V{"X"}}, {X, V{"C"}}, {L, V{"B", "A"}}}, {{0, 1, 1}, {0, 0, 2}, {1, 0, 3}}),
        a3({{X, V{"Z"}}, {L, V{"C", "L"}}, {L, V{"B", "A"}}}, {{0, 0, 1}, {1, 1, 2}}),
        a4({{X, V{"Z"}}, {L, V{"L", "A"}}, {L, V{"C", "B"}}}, {{0, 0, 1}, {1, 0, 2}}),
        b1({{G, V{"G", "X"}}, {G, V{"Z", "Y"}}, {X, V{"B"}}, {X, V{"C"}}, {X, V{"A"}}},
           {{0, 0, 1}, {1, 1, 2}, {1, 0, 3}, {0, 1, 4}}),
        b2({{G, V{"G", "X"}}, {X, V{"X"}}, {L, V{"C", "B"}}, {X, V{"A"}}}, {{0, 0, 1}, {1, 0, 2}, {0, 1, 3}}),
        b3({{G, V{"G", "X"}}, {X, V{"A"}}, {X, V{"X"}}, {L, V{"C", "B"}}}, {{0, 1, 1}, {0, 0, 2}, {2, 0, 3}}) {}

  const Field& F() const { return S.ring->field(); }

  Block m_on(const Matrix& m, std::vector<int> src, std::vector<int> dst) const {
    return Block{std::move(src), &gxy, m, &xl, std::move(dst)};
  }

  // Unit diagram: the left-hand composite does not involve m.
  Matrix unit_fixed() const {
    const Block l2{{0, 1}, &T.spaces->dl, T.l, &T.spaces->reg, {0}};
    return la::mul(F(), collapse_left(e1), induced_map(u0, e1, {l2}, {{2, 1}}));
  }

  Matrix eta_stage(const Matrix& eta) const {
    const Matrix s1 = induced_map(u0, u1, {Block{{1}, &k2, eta, &xk, {1, 2}}}, {{0, 0}, {2, 3}});
    const Matrix s2 = induced_map(u1, u2, {}, {{0, 0}, {1, 1}, {2, 3}, {3, 2}});
    return la::mul(F(), s2, s1);
  }

  Matrix unit_moving(const Matrix& m, const Matrix& eta_part) const {
    const Block l1{{1, 2}, &S.spaces->dl, S.l, &S.spaces->reg, {1}};
    const Matrix s3 = induced_map(u2, u3, {m_on(m, {0, 1, 2}, {0, 1})}, {{3, 2}});
    const Matrix s4 = induced_map(u3, u4, {l1}, {{0, 0}});
    return la::mul(F(), collapse_right(u4), la::mul(F(), s4, la::mul(F(), s3, eta_part)));
  }

  Matrix comm_twist() const {
    return induced_map(gxy, gxy, {Block{{0}, &T.spaces->lam, T.c, &T.spaces->lam, {0}}}, {{1, 2}, {2, 1}});
  }

  Matrix comm_lambda() const {
    return induced_map(xl, xl, {Block{{1}, &S.spaces->lam, S.c, &S.spaces->lam, {1}}}, {{0, 0}});
  }

  std::pair<Matrix, Matrix> assoc_legs(const Matrix& m) const {
    const Field& f = F();
    const Matrix t1 = induced_map(a0, a1, {m_on(m, {1, 2, 3}, {1, 2})}, {{0, 0}, {4, 3}});
    const Matrix t2 = induced_map(a1, a2, {}, {{0, 0}, {1, 1}, {2, 3}, {3, 2}});
    const Matrix t3 = induced_map(a2, a3, {m_on(m, {0, 1, 2}, {0, 1})}, {{3, 2}});
    const Matrix t4 = induced_map(a3, a4, {Block{{1, 2}, &S.spaces->da, S.a, &S.spaces->ca, {1, 2}}}, {{0, 0}});
    const Matrix top = la::mul(f, t4, la::mul(f, t3, la::mul(f, t2, t1)));
    const Matrix s1 =
        induced_map(a0, b1, {Block{{0, 1}, &T.spaces->da, T.a, &T.spaces->ca, {0, 1}}}, {{2, 4}, {3, 2}, {4, 3}});
    const Matrix s2 = induced_map(b1, b2, {m_on(m, {1, 2, 3}, {1, 2})}, {{0, 0}, {4, 3}});
    const Matrix s3 = induced_map(b2, b3, {}, {{0, 0}, {3, 1}, {1, 2}, {2, 3}});
    const Matrix s4 = induced_map(b3, a4, {m_on(m, {0, 1, 2}, {0, 1})}, {{3, 2}});
    const Matrix bottom = la::mul(f, s4, la::mul(f, s3, la::mul(f, s2, s1)));
    return {top, bottom};
  }
};

void append_flat(Vec& dst, const Matrix& m) { dst.insert(dst.end(), m.data().begin(), m.data().end()); }

}  // namespace

std::vector<std::string> verify_picard(const PicardElement& P) {
  std::vector<std::string> out;
  const auto& R = P.X->algebra();
  const auto reg = regular_bimodule(R, 1, {"B"});
  const TensorExpr xy = pair_expr(P.X, P.Y);
  const TensorExpr yx = pair_expr(P.Y, P.X);
  auto check = [&](const TensorExpr& e, const Matrix& w, const char* name) {
    const Intertwiner f{e.module(), reg, {0}, w};
    for (const auto& d : check_intertwiner(f)) out.push_back(std::string(name) + ": " + d);
    if (w.rows() == reg->dim() && w.cols() == e.dim() && !is_invertible(f))
      out.push_back(std::string(name) + ": not invertible");
  };
  check(xy, P.xy, "X(x)Y -> R");
  check(yx, P.yx, "Y(x)X -> R");
  if (!out.empty()) return out;
  const auto t = triangle(P, reg);
  if (t.left != t.right) out.push_back("the two collapses of X(x)Y(x)X disagree");
  return out;
}

std::vector<PicardElement> picard_enumerate(const AlgebraPtr& R, int max_dim, const EnumOptions& opts) {
  const Field& F = R->field();
  const auto reg = regular_bimodule(R, 1, {"B"});
  std::vector<BimodulePtr> cands;
  for (int d = 1; d <= max_dim; ++d) {
    auto v = enumerate_bimodules(R, 1, d, opts);
    cands.insert(cands.end(), v.begin(), v.end());
  }
  std::vector<PicardElement> out;
  for (const auto& X : cands) {
    for (const auto& Y : cands) {
      const TensorExpr xy = pair_expr(X, Y);
      const TensorExpr yx = pair_expr(Y, X);
      if (xy.dim() != R->dim() || yx.dim() != R->dim()) continue;
      const auto f = iso_test(xy.module(), reg, {0});
      if (!f) continue;
      const auto g_basis = hom_basis(*yx.module(), *reg, {0});
      PicardElement P{X, Y, f->map, {}};
      const auto found = invertible_in(F, g_basis, kExhaustiveCap, "Picard inverse", [&](const Matrix& g) {
        P.yx = g;
        const auto t = triangle(P, reg);
        return t.left == t.right;
      }, true);
      if (found.empty()) continue;
      P.yx = found.front();
      out.push_back(std::move(P));
      break;
    }
  }
  return out;
}

std::vector<std::string> check_witness(const SmcStructure& S, const SmcStructure& T, const EquivalenceWitness& w) {
  std::vector<std::string> out;
  for (const auto& e : verify_picard(w.X)) out.push_back("Picard element: " + e);
  if (!out.empty()) return out;
  const Frame fr(S, T, w.X.X);
  const Field& F = S.ring->field();
  const Intertwiner eta{T.unit(), fr.xk.module(), {}, w.eta};
  const Intertwiner m{fr.gxy.module(), fr.xl.module(), match_labels(*fr.gxy.module(), *fr.xl.module()), w.m};
  for (const auto* f : {&eta, &m}) {
    const char* name = f == &eta ? "eta" : "m";
    for (const auto& e : check_intertwiner(*f)) out.push_back(std::string(name) + ": " + e);
    if (f->map.rows() == f->cod->dim() && f->map.cols() == f->dom->dim() && !is_invertible(*f))
      out.push_back(std::string(name) + ": not invertible");
  }
  if (!out.empty()) return out;
  const Matrix u = fr.unit_moving(w.m, fr.eta_stage(w.eta));
  if (const int j = detail::first_difference(fr.unit_fixed(), u); j >= 0)
    out.push_back("unit diagram differs on basis element " + std::to_string(j));
  if (la::mul(F, w.m, fr.comm_twist()) != la::mul(F, fr.comm_lambda(), w.m))
    out.push_back("commutativity diagram does not commute");
  const auto [top, bottom] = fr.assoc_legs(w.m);
  if (top != bottom) out.push_back("associativity diagram does not commute");
  return out;
}

std::optional<EquivalenceWitness> equiv_test(const SmcStructure& S, const SmcStructure& T,
                                             const std::vector<PicardElement>& picard, const EquivOptions& opts) {
  if (!same_ring(*S.ring, *T.ring)) throw InvalidArgument("structures over different algebras");
  const Field& F = S.ring->field();
  try {
    for (const auto& P : picard) {
      const Frame fr(S, T, P.X);
      if (fr.gxy.dim() != fr.xl.dim() || fr.k2.dim() != fr.xk.dim()) continue;
      const auto& gm = fr.gxy.module();
      const auto& xm = fr.xl.module();
      const auto mb = hom_basis(*gm, *xm, match_labels(*gm, *xm));
      const auto eb = hom_basis(*T.unit(), *fr.xk.module(), {});
      if (mb.empty() || eb.empty()) continue;
      const Matrix fixed = fr.unit_fixed();
      const Matrix twist = fr.comm_twist();
      const Matrix swap = fr.comm_lambda();

      std::optional<EquivalenceWitness> hit;
      for_each_combination(F, eb, opts.budget, "equivalence unit map", [&](const Vec&, const Matrix& eta) {
        if (!la::invertible(F, eta)) return true;
        // m enters the unit and commutativity diagrams linearly.
        const Matrix ep = fr.eta_stage(eta);
        std::vector<Vec> cols;
        for (const auto& b : mb) {
          Vec col;
          append_flat(col, fr.unit_moving(b, ep));
          append_flat(col, la::sub(F, la::mul(F, b, twist), la::mul(F, swap, b)));
          cols.push_back(std::move(col));
        }
        const int rows = static_cast<int>(cols.front().size());
        Vec rhs;
        append_flat(rhs, fixed);
        rhs.resize(rows, 0);
        const Matrix A = la::from_columns(rows, cols);
        const auto part = la::solve(F, A, rhs);
        if (!part) return true;
        const Matrix ns = la::nullspace(F, A);
        std::vector<Matrix> dirs;
        for (int j = 0; j < ns.cols(); ++j) dirs.push_back(combine(F, mb, ns.column(j)));
        const Matrix base = combine(F, mb, *part);
        for_each_combination(F, dirs, opts.budget, "equivalence product map",
                             [&](const Vec&, const Matrix& d) {
                               const Matrix m = dirs.empty() ? base : la::add(F, base, d);
                               if (!la::invertible(F, m)) return true;
                               const auto [top, bottom] = fr.assoc_legs(m);
                               if (top != bottom) return true;
                               hit = EquivalenceWitness{P, eta, m};
                               return false;
                             });
        return !hit.has_value();
      });
      if (hit) return hit;
    }
  } catch (const BudgetExceeded& e) {
    throw Inconclusive(std::string("equivalence search: ") + e.what());
  }
  return std::nullopt;
}

bool same_shape(const SmcStructure& S, const SmcStructure& T, const std::vector<PicardElement>& picard) {
  for (const auto& P : picard) {
    const Frame fr(S, T, P.X);
    if (fr.gxy.dim() != fr.xl.dim()) continue;
    const auto& gm = fr.gxy.module();
    const auto& xm = fr.xl.module();
    if (iso_test(gm, xm, match_labels(*gm, *xm))) return true;
  }
  return false;
}

Partition partition_classes(const std::vector<SmcStructure>& structures, const std::vector<std::string>& keys,
                            const std::vector<PicardElement>& picard, const EquivOptions& opts, int shards) {
  if (keys.size() != structures.size()) throw InvalidArgument("one key per structure");
  const int n = static_cast<int>(structures.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return keys[x] < keys[y]; });

  Partition out;
  for (int idx : order) {
    const int reps = static_cast<int>(out.representative.size());
    std::vector<std::optional<EquivalenceWitness>> found(reps);
    auto test = [&](int r) {
      try {
        found[r] = equiv_test(structures[out.representative[r]], structures[idx], picard, opts);
      } catch (const Inconclusive& e) {
        throw Inconclusive("structures " + std::to_string(out.representative[r]) + " and " + std::to_string(idx) +
                           ": " + e.what());
      }
    };
    if (shards <= 1 || reps <= 1) {
      for (int r = 0; r < reps; ++r) {
        test(r);
        if (found[r]) break;
      }
    } else {
      for (int lo = 0; lo < reps; lo += shards) {
        std::vector<std::future<void>> jobs;
        const int hi = std::min(reps, lo + shards);
        for (int r = lo; r < hi; ++r) jobs.push_back(std::async(std::launch::async, test, r));
        for (auto& j : jobs) j.get();
        bool any = false;
        for (int r = lo; r < hi; ++r) any = any || found[r].has_value();
        if (any) break;
      }
    }
    int cls = -1;
    for (int r = 0; r < reps; ++r)
      if (found[r]) {
        cls = r;
        break;
      }
    if (cls < 0) {
      out.representative.push_back(idx);
      out.classes.push_back({idx});
    } else {
      out.classes[cls].push_back(idx);
      out.merges.emplace_back(idx, out.representative[cls]);
      out.witnesses.push_back(std::move(*found[cls]));
    }
  }
  return out;
}

}  // namespace smc

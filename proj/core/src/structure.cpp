#include "smc/structure.hpp"

#include "smc/errors.hpp"

namespace smc {

std::shared_ptr<const StructureSpaces> make_spaces(const BimodulePtr& lambda, const BimodulePtr& unit) {
  if (!lambda || lambda->fold() != 2) throw InvalidArgument("Lambda must be a 2-fold bimodule");
  if (!unit || unit->fold() != 0) throw InvalidArgument("the unit must be a left module");
  if (!same_ring(*lambda->algebra(), *unit->algebra())) throw InvalidArgument("Lambda and K over different algebras");
  const auto& L = lambda;
  const auto& K = unit;
  auto reg = regular_bimodule(lambda->algebra(), 1, {"B"});
  using V = std::vector<std::string>;
  auto sp = std::make_shared<StructureSpaces>(StructureSpaces{
      lambda,
      unit,
      reg,
      TensorExpr({{L, V{"C", "L"}}, {L, V{"B", "A"}}}, {{0, 1, 1}}),
      TensorExpr({{L, V{"L", "A"}}, {L, V{"C", "B"}}}, {{0, 0, 1}}),
      TensorExpr({{L, V{"B", "K"}}, {K, V{}}}, {{0, 1, 1}}),
      TensorExpr(Leaf{L, V{"B", "A"}}),
      TensorExpr(Leaf{reg, V{"B"}}),
      TensorExpr({{L, V{"D", "G"}}, {L, V{"C", "E"}}, {L, V{"B", "A"}}}, {{0, 1, 1}, {1, 1, 2}}),
      TensorExpr({{L, V{"G", "E"}}, {L, V{"D", "C"}}, {L, V{"B", "A"}}}, {{0, 0, 1}, {0, 1, 2}}),
      TensorExpr({{L, V{"E", "G"}}, {L, V{"B", "A"}}, {L, V{"D", "C"}}}, {{0, 1, 1}, {0, 0, 2}}),
      TensorExpr({{L, V{"G", "A"}}, {L, V{"E", "B"}}, {L, V{"D", "C"}}}, {{0, 0, 1}, {1, 0, 2}}),
      TensorExpr({{L, V{"D", "G"}}, {L, V{"E", "A"}}, {L, V{"C", "B"}}}, {{0, 1, 1}, {1, 0, 2}}),
      TensorExpr({{L, V{"G", "A"}}, {L, V{"D", "E"}}, {L, V{"C", "B"}}}, {{0, 0, 1}, {1, 1, 2}}),
      TensorExpr({{L, V{"B", "L"}}, {L, V{"K", "A"}}, {K, V{}}}, {{0, 1, 1}, {1, 0, 2}}),
      TensorExpr({{L, V{"L", "A"}}, {L, V{"B", "K"}}, {K, V{}}}, {{0, 0, 1}, {1, 1, 2}}),
      TensorExpr({{L, V{"L", "A"}}, {reg, V{"B"}}}, {{0, 0, 1}}),
      TensorExpr({{L, V{"B", "L"}}, {L, V{"A", "K"}}, {K, V{}}}, {{0, 1, 1}, {1, 1, 2}}),
      TensorExpr({{L, V{"B", "L"}}, {reg, V{"A"}}}, {{0, 1, 1}}),
  });
  return sp;
}

SmcStructure make_structure(std::shared_ptr<const StructureSpaces> spaces, Matrix a, Matrix l, Matrix c,
                            std::string name) {
  SmcStructure S;
  S.ring = spaces->lambda->algebra();
  S.spaces = std::move(spaces);
  S.a = std::move(a);
  S.l = std::move(l);
  S.c = std::move(c);
  S.name = std::move(name);
  return S;
}

SmcStructure make_structure(const BimodulePtr& lambda, const BimodulePtr& unit, Matrix a, Matrix l, Matrix c,
                            std::string name) {
  return make_structure(make_spaces(lambda, unit), std::move(a), std::move(l), std::move(c), std::move(name));
}

Intertwiner SmcStructure::a_map() const {
  const auto& d = spaces->da.module();
  const auto& c2 = spaces->ca.module();
  return {d, c2, match_labels(*d, *c2), a};
}

Intertwiner SmcStructure::l_map() const {
  return {spaces->dl.module(), spaces->reg.module(), {0}, l};
}

Intertwiner SmcStructure::c_map() const { return {spaces->lambda, spaces->lambda, {1, 0}, c}; }

std::vector<std::string> validate_structure(const SmcStructure& S) {
  std::vector<std::string> out;
  auto check = [&](const Intertwiner& f, const std::string& name) {
    for (const auto& e : check_intertwiner(f)) out.push_back(name + ": " + e);
    if (f.map.rows() == f.cod->dim() && f.map.cols() == f.dom->dim() && !is_invertible(f))
      out.push_back(name + ": not invertible");
  };
  for (const auto& e : validate_bimodule(*S.lambda())) out.push_back("Lambda: " + e);
  for (const auto& e : validate_bimodule(*S.unit())) out.push_back("K: " + e);
  check(S.a_map(), "a");
  check(S.l_map(), "l");
  check(S.c_map(), "c");
  return out;
}

Smash smash(const SmcStructure& S, const BimodulePtr& A, const BimodulePtr& B) {
  if (A->fold() != 0 || B->fold() != 0) throw InvalidArgument("smash takes left modules");
  if (!same_ring(*A->algebra(), *S.ring) || !same_ring(*B->algebra(), *S.ring))
    throw InvalidArgument("algebra mismatch");
  return Smash{TensorExpr({{S.lambda(), {"B", "A"}}, {A, {}}, {B, {}}}, {{0, 1, 1}, {0, 0, 2}})};
}

Matrix smash_map(const Smash& src, const Smash& dst, const Matrix& f, const Matrix& g) {
  const TensorExpr a0(Leaf{src.expr.leaves()[1].module, {}});
  const TensorExpr a1(Leaf{dst.expr.leaves()[1].module, {}});
  const TensorExpr b0(Leaf{src.expr.leaves()[2].module, {}});
  const TensorExpr b1(Leaf{dst.expr.leaves()[2].module, {}});
  return induced_map(src.expr, dst.expr, {Block{{1}, &a0, f, &a1, {1}}, Block{{2}, &b0, g, &b1, {2}}}, {{0, 0}});
}

BimodulePtr internal_hom(const SmcStructure& S, const BimodulePtr& B, const BimodulePtr& P) {
  if (B->fold() != 0 || P->fold() != 0) throw InvalidArgument("internal hom takes left modules");
  if (!same_ring(*B->algebra(), *S.ring) || !same_ring(*P->algebra(), *S.ring))
    throw InvalidArgument("algebra mismatch");
  const Field& F = S.ring->field();
  const TensorExpr e({{S.lambda(), {"B", "A"}}, {B, {}}}, {{0, 0, 1}});
  const auto& N = e.module();
  const auto N0 = std::make_shared<const NFoldBimodule>(N->dim(), N->left_ptr(), std::vector<ActionPtr>{});
  const auto basis = hom_basis(*N0, *P, {});
  const int k = static_cast<int>(basis.size());
  std::vector<Matrix> gens;
  if (k > 0) {
    std::vector<Vec> cols;
    for (const auto& b : basis) cols.push_back(b.data());
    const Matrix Bm = la::from_columns(P->dim() * N->dim(), cols);
    for (const auto& g : N->right(0).gens) {
      Matrix t(k, k);
      for (int j = 0; j < k; ++j) {
        const auto coords = la::solve(F, Bm, la::mul(F, basis[j], g).data());
        if (!coords) throw std::logic_error("internal hom not closed under the action");
        t.set_column(j, *coords);
      }
      gens.push_back(std::move(t));
    }
  } else {
    gens.assign(S.ring->action_generators().size(), Matrix(0, 0));
  }
  return left_module(S.ring, k, std::move(gens));
}

}  // namespace smc

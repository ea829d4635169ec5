#include "smc/hom.hpp"

#include <random>

#include "smc/algebra.hpp"
#include "smc/errors.hpp"

namespace smc {

Matrix combine(const Field& F, const std::vector<Matrix>& basis, const Vec& coeffs) {
  if (basis.empty()) return Matrix();
  Matrix out(basis[0].rows(), basis[0].cols());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i] != 0) out = la::add(F, out, la::scale(F, coeffs[i], basis[i]));
  return out;
}

std::vector<Matrix> hom_basis(const NFoldBimodule& M, const NFoldBimodule& N, const std::vector<int>& perm) {
  if (M.fold() != N.fold()) throw InvalidArgument("hom space between different folds");
  if (static_cast<int>(perm.size()) != M.fold()) throw InvalidArgument("slot correspondence has wrong length");
  const Field& F = M.field();
  const int m = M.dim(), n = N.dim();
  std::vector<Matrix> basis;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c) {
      Matrix e(n, m);
      e(r, c) = 1;
      basis.push_back(std::move(e));
    }
  // Restrict the current basis by one constraint f A = B f at a time.
  auto restrict = [&](const Matrix& A, const Matrix& B) {
    if (basis.empty()) return;
    Matrix images(n * m, static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Matrix d = la::sub(F, la::mul(F, basis[i], A), la::mul(F, B, basis[i]));
      images.set_column(static_cast<int>(i), d.data());
    }
    if (images.is_zero()) return;
    const Matrix ker = la::nullspace(F, images);
    std::vector<Matrix> next;
    for (int k = 0; k < ker.cols(); ++k) next.push_back(combine(F, basis, ker.column(k)));
    basis = std::move(next);
  };
  auto constrain = [&](const Action& a, const Action& b) {
    if (!same_ring(*a.algebra, *b.algebra)) throw InvalidArgument("intertwined actions over different algebras");
    for (const auto& g : a.algebra->action_generators()) restrict(act(F, a, g), act(F, b, g));
  };
  constrain(M.left(), N.left());
  for (int t = 0; t < M.fold(); ++t) constrain(M.right(t), N.right(perm[t]));
  if (basis.empty()) return basis;
  // canonical form: reduced echelon rows of the flattened maps
  Matrix rows(static_cast<int>(basis.size()), n * m);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (int j = 0; j < n * m; ++j) rows(static_cast<int>(i), j) = basis[i].data()[j];
  const auto ech = la::rref(F, rows);
  std::vector<Matrix> out;
  for (int i = 0; i < ech.reduced.rows(); ++i)
    out.emplace_back(n, m, std::vector<Elem>(ech.reduced.row(i).begin(), ech.reduced.row(i).end()));
  return out;
}

std::vector<Intertwiner> hom_space(const BimodulePtr& M, const BimodulePtr& N, const std::vector<int>& perm) {
  std::vector<Intertwiner> out;
  for (auto& b : hom_basis(*M, *N, perm)) out.push_back({M, N, perm, std::move(b)});
  return out;
}

std::vector<int> match_labels(const NFoldBimodule& M, const NFoldBimodule& N) {
  if (M.fold() != N.fold()) throw InvalidArgument("label matching between different folds");
  std::vector<int> perm(M.fold(), -1);
  std::vector<bool> taken(N.fold(), false);
  for (int t = 0; t < M.fold(); ++t) {
    for (int s = 0; s < N.fold(); ++s)
      if (!taken[s] && N.labels()[s] == M.labels()[t]) {
        perm[t] = s;
        taken[s] = true;
        break;
      }
    if (perm[t] < 0) throw InvalidArgument("slot label " + M.labels()[t] + " has no partner");
  }
  return perm;
}

void for_each_combination(const Field& F, const std::vector<Matrix>& basis, long long cap, const char* stage,
                          const std::function<bool(const Vec&, const Matrix&)>& f) {
  const double size = space_size(F.order(), static_cast<double>(basis.size()));
  if (size > static_cast<double>(cap)) throw BudgetExceeded(stage, size);
  for_each_vector(F.order(), static_cast<int>(basis.size()), [&](const Vec& c) { return f(c, combine(F, basis, c)); });
}

namespace {

// Invariants preserved by isomorphism: ranks of every basis table.
bool rank_profile_matches(const NFoldBimodule& M, const NFoldBimodule& N, const std::vector<int>& perm) {
  const Field& F = M.field();
  auto same = [&](const Action& a, const Action& b) {
    for (std::size_t i = 0; i < a.basis.size(); ++i)
      if (la::rank(F, a.basis[i]) != la::rank(F, b.basis[i])) return false;
    return true;
  };
  if (!same(M.left(), N.left())) return false;
  for (int t = 0; t < M.fold(); ++t)
    if (!same(M.right(t), N.right(perm[t]))) return false;
  return true;
}

}  // namespace

std::optional<Intertwiner> iso_test(const BimodulePtr& M, const BimodulePtr& N, const std::vector<int>& perm,
                                    const HomOptions& opts) {
  if (M->fold() != N->fold()) throw InvalidArgument("iso test between different folds");
  if (M->dim() != N->dim()) return std::nullopt;
  const Field& F = M->field();
  if (M->dim() == 0) return Intertwiner{M, N, perm, Matrix(0, 0)};
  if (!rank_profile_matches(*M, *N, perm)) return std::nullopt;
  const auto basis = hom_basis(*M, *N, perm);
  if (basis.empty()) return std::nullopt;
  if (hom_basis(*M, *M, identity_perm(M->fold())).size() != basis.size()) return std::nullopt;
  const int k = static_cast<int>(basis.size());
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> coef(0, F.order() - 1);
  for (int attempt = 0; attempt < opts.random_attempts; ++attempt) {
    Vec c(k);
    for (auto& e : c) e = static_cast<Elem>(coef(rng));
    Matrix f = combine(F, basis, c);
    if (la::invertible(F, f)) return Intertwiner{M, N, perm, std::move(f)};
  }
  const double size = space_size(F.order(), k);
  if (size > static_cast<double>(opts.exhaustive_cap))
    throw Inconclusive("hom space of size ~" + std::to_string(size) + " exceeds the exhaustive cap");
  // projective scan: the first nonzero coefficient is 1
  std::optional<Intertwiner> found;
  for (int lead = 0; lead < k && !found; ++lead) {
    for_each_vector(F.order(), k - lead - 1, [&](const Vec& tail) {
      Vec c(k, 0);
      c[lead] = 1;
      for (int j = 0; j < static_cast<int>(tail.size()); ++j) c[lead + 1 + j] = tail[j];
      Matrix f = combine(F, basis, c);
      if (la::invertible(F, f)) {
        found = Intertwiner{M, N, perm, std::move(f)};
        return false;
      }
      return true;
    });
  }
  return found;
}

}  // namespace smc

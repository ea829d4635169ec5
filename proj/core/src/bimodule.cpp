#include "smc/bimodule.hpp"

#include "smc/errors.hpp"

namespace smc {

namespace {

Matrix word_table(const Field& F, int m, const std::vector<Matrix>& gens, const Word& w, bool anti) {
  Matrix t = Matrix::identity(m);
  for (int g : w) t = anti ? la::mul(F, gens[g], t) : la::mul(F, t, gens[g]);
  return t;
}

std::string pair_str(int i, int j) { return "(" + std::to_string(i) + ", " + std::to_string(j) + ")"; }

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

ActionPtr regular_action(const AlgebraPtr& R, bool anti) {
  std::vector<Matrix> tables;
  for (int i = 0; i < R->dim(); ++i) tables.push_back(anti ? R->right_regular(i) : R->left_regular(i));
  return action_from_basis(R, R->dim(), std::move(tables), anti);
}

}  // namespace

ActionPtr action_from_generators(AlgebraPtr R, int m, std::vector<Matrix> gen_tables, bool anti) {
  const Field& F = R->field();
  if (static_cast<int>(R->basis_words().size()) != R->dim())
    throw InvalidArgument("algebra generators do not generate; cannot extend an action from them");
  if (gen_tables.size() != R->action_generators().size()) throw InvalidArgument("wrong number of generator tables");
  for (const auto& t : gen_tables)
    if (t.rows() != m || t.cols() != m) throw InvalidArgument("generator table has wrong shape");
  const auto& words = R->basis_words();
  std::vector<Matrix> wt;
  wt.reserve(words.size());
  for (const auto& w : words) wt.push_back(word_table(F, m, gen_tables, w, anti));
  const Matrix& B = R->basis_in_words();
  auto out = std::make_shared<Action>();
  out->algebra = R;
  out->anti = anti;
  for (int i = 0; i < R->dim(); ++i) {
    Matrix t(m, m);
    for (int j = 0; j < R->dim(); ++j)
      if (B(j, i) != 0) t = la::add(F, t, la::scale(F, B(j, i), wt[j]));
    out->basis.push_back(std::move(t));
  }
  out->gens = std::move(gen_tables);
  return out;
}

ActionPtr action_from_basis(AlgebraPtr R, int m, std::vector<Matrix> basis_tables, bool anti) {
  if (static_cast<int>(basis_tables.size()) != R->dim()) throw InvalidArgument("wrong number of basis tables");
  for (const auto& t : basis_tables)
    if (t.rows() != m || t.cols() != m) throw InvalidArgument("basis table has wrong shape");
  auto out = std::make_shared<Action>();
  out->algebra = R;
  out->anti = anti;
  out->basis = std::move(basis_tables);
  for (const auto& g : R->action_generators()) out->gens.push_back(act(R->field(), *out, g));
  return out;
}

Matrix act(const Field& F, const Action& a, const Vec& element) {
  const int m = a.basis.empty() ? 0 : a.basis[0].rows();
  Matrix t(m, m);
  for (std::size_t i = 0; i < element.size(); ++i)
    if (element[i] != 0) t = la::add(F, t, la::scale(F, element[i], a.basis[i]));
  return t;
}

NFoldBimodule::NFoldBimodule(int dim, ActionPtr left, std::vector<ActionPtr> rights, std::vector<std::string> labels)
    : dim_(dim), left_(std::move(left)), rights_(std::move(rights)), labels_(std::move(labels)) {
  if (dim_ < 0) throw InvalidArgument("negative module dimension");
  if (!left_ || left_->anti) throw InvalidArgument("left action missing or marked anti");
  auto check = [&](const Action& a) {
    if (!(a.algebra->field() == left_->algebra->field())) throw InvalidArgument("actions over different fields");
    for (const auto& t : a.basis)
      if (t.rows() != dim_ || t.cols() != dim_) throw InvalidArgument("action table has wrong shape");
  };
  check(*left_);
  for (const auto& r : rights_) {
    if (!r || !r->anti) throw InvalidArgument("right action missing or not marked anti");
    check(*r);
  }
  if (labels_.empty())
    for (int t = 0; t < fold(); ++t) labels_.push_back(std::string(1, static_cast<char>('A' + t % 26)));
  if (static_cast<int>(labels_.size()) != fold()) throw InvalidArgument("slot label count differs from fold");
}

std::vector<Elem> NFoldBimodule::encode() const {
  std::vector<Elem> out;
  auto put = [&](const Action& a) {
    for (const auto& t : a.gens) out.insert(out.end(), t.data().begin(), t.data().end());
  };
  put(*left_);
  for (const auto& r : rights_) put(*r);
  return out;
}

bool operator==(const NFoldBimodule& a, const NFoldBimodule& b) {
  if (a.dim_ != b.dim_ || a.fold() != b.fold() || a.labels_ != b.labels_) return false;
  if (!(*a.left_ == *b.left_)) return false;
  for (int t = 0; t < a.fold(); ++t)
    if (!(*a.rights_[t] == *b.rights_[t])) return false;
  return true;
}

std::vector<std::string> validate_bimodule(const NFoldBimodule& M) {
  std::vector<std::string> out;
  const Field& F = M.field();
  const int m = M.dim();
  auto check_action = [&](const Action& a, const std::string& name) {
    const Algebra& R = *a.algebra;
    if (act(F, a, R.unit()) != Matrix::identity(m)) out.push_back(name + " not unital");
    for (int i = 0; i < R.dim(); ++i)
      for (int j = 0; j < R.dim(); ++j) {
        const Matrix lhs = la::mul(F, a.basis[i], a.basis[j]);
        const Matrix rhs = act(F, a, a.anti ? R.product(j, i) : R.product(i, j));
        if (lhs != rhs) out.push_back(name + (a.anti ? " not anti-multiplicative at " : " not multiplicative at ") + pair_str(i, j));
      }
  };
  auto commute = [&](const Action& a, const Action& b, const std::string& name) {
    for (std::size_t i = 0; i < a.basis.size(); ++i)
      for (std::size_t j = 0; j < b.basis.size(); ++j)
        if (la::mul(F, a.basis[i], b.basis[j]) != la::mul(F, b.basis[j], a.basis[i])) {
          out.push_back(name + " " + pair_str(static_cast<int>(i), static_cast<int>(j)));
          return;
        }
  };
  check_action(M.left(), "left action");
  for (int t = 0; t < M.fold(); ++t) {
    const std::string slot = std::to_string(t + 1);
    check_action(M.right(t), "right action at slot " + slot);
    commute(M.left(), M.right(t), "left/right commutation at slot " + slot);
    for (int s = 0; s < t; ++s)
      commute(M.right(s), M.right(t), "right/right commutation at slots " + std::to_string(s + 1) + "," + slot);
  }
  return out;
}

BimodulePtr permute_actions(const BimodulePtr& M, const std::vector<int>& sigma) {
  const int n = M->fold();
  if (static_cast<int>(sigma.size()) != n) throw InvalidArgument("permutation length differs from fold");
  std::vector<bool> seen(n, false);
  for (int s : sigma) {
    if (s < 0 || s >= n || seen[s]) throw InvalidArgument("not a permutation");
    seen[s] = true;
  }
  if (sigma == identity_perm(n)) return M;
  std::vector<ActionPtr> rights;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    rights.push_back(M->right_ptr(sigma[i]));
    labels.push_back(M->labels()[sigma[i]]);
  }
  return std::make_shared<const NFoldBimodule>(M->dim(), M->left_ptr(), std::move(rights), std::move(labels));
}

BimodulePtr relabel(const BimodulePtr& M, std::vector<std::string> labels) {
  return std::make_shared<const NFoldBimodule>(M->dim(), M->left_ptr(), M->rights(), std::move(labels));
}

BimodulePtr regular_bimodule(const AlgebraPtr& R, int n, std::vector<std::string> labels) {
  auto right = regular_action(R, true);
  return std::make_shared<const NFoldBimodule>(R->dim(), regular_action(R, false), std::vector<ActionPtr>(n, right),
                                               std::move(labels));
}

BimodulePtr left_module(const AlgebraPtr& R, int m, std::vector<Matrix> gen_tables) {
  return std::make_shared<const NFoldBimodule>(m, action_from_generators(R, m, std::move(gen_tables), false),
                                               std::vector<ActionPtr>{});
}

BimodulePtr zero_bimodule(const AlgebraPtr& R, int n) {
  auto make = [&](bool anti) { return action_from_basis(R, 0, std::vector<Matrix>(R->dim(), Matrix(0, 0)), anti); };
  return std::make_shared<const NFoldBimodule>(0, make(false), std::vector<ActionPtr>(n, make(true)));
}

BimodulePtr direct_sum(const NFoldBimodule& A, const NFoldBimodule& B) {
  if (A.fold() != B.fold()) throw InvalidArgument("direct sum of bimodules with different folds");
  const int m = A.dim() + B.dim();
  auto sum = [&](const Action& a, const Action& b) {
    if (!same_ring(*a.algebra, *b.algebra)) throw InvalidArgument("direct sum over different algebras");
    std::vector<Matrix> tables;
    for (std::size_t i = 0; i < a.basis.size(); ++i) tables.push_back(block_diag(a.basis[i], b.basis[i]));
    return action_from_basis(a.algebra, m, std::move(tables), a.anti);
  };
  std::vector<ActionPtr> rights;
  for (int t = 0; t < A.fold(); ++t) rights.push_back(sum(A.right(t), B.right(t)));
  return std::make_shared<const NFoldBimodule>(m, sum(A.left(), B.left()), std::move(rights), A.labels());
}

std::vector<std::string> check_intertwiner(const Intertwiner& f) {
  std::vector<std::string> out;
  const NFoldBimodule& D = *f.dom;
  const NFoldBimodule& C = *f.cod;
  if (f.map.rows() != C.dim() || f.map.cols() != D.dim()) {
    out.push_back("map has wrong shape");
    return out;
  }
  if (D.fold() != C.fold() || static_cast<int>(f.perm.size()) != D.fold()) {
    out.push_back("fold or slot correspondence mismatch");
    return out;
  }
  const Field& F = D.field();
  auto check = [&](const Action& a, const Action& b, const std::string& name) {
    for (std::size_t g = 0; g < a.gens.size(); ++g)
      if (la::mul(F, f.map, a.gens[g]) != la::mul(F, b.gens[g], f.map)) {
        out.push_back(name + " not intertwined at generator " + std::to_string(g));
        return;
      }
  };
  check(D.left(), C.left(), "left action");
  for (int t = 0; t < D.fold(); ++t)
    check(D.right(t), C.right(f.perm[t]), "right action at slot " + std::to_string(t + 1));
  return out;
}

bool is_invertible(const Intertwiner& f) { return la::invertible(f.dom->field(), f.map); }

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

std::vector<int> compose_perm(const std::vector<int>& s, const std::vector<int>& t) {
  std::vector<int> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = s[t[i]];
  return out;
}

}  // namespace smc

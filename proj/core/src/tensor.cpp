#include "smc/tensor.hpp"

#include <algorithm>
#include <map>

#include "smc/errors.hpp"

namespace smc {

namespace {

// a - s*b for sparse vectors
SparseVec sparse_axpy(const Field& F, const SparseVec& a, Elem s, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, F.neg(F.mul(s, b[j].second)));
      ++j;
    } else {
      const Elem v = F.sub(a[i].second, F.mul(s, b[j].second));
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

void normalize(SparseVec& v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
}

// Right echelon form: rows keyed by their last nonzero coordinate.
class RightEchelon {
 public:
  RightEchelon(const Field& F, int n) : F_(F), rows_(n), has_(n, false) {}

  void insert(SparseVec v) {
    while (!v.empty()) {
      const int c = v.back().first;
      if (!has_[c]) {
        const Elem inv = F_.inv(v.back().second);
        for (auto& e : v) e.second = F_.mul(inv, e.second);
        rows_[c] = std::move(v);
        has_[c] = true;
        ++rank_;
        return;
      }
      v = sparse_axpy(F_, v, v.back().second, rows_[c]);
    }
  }

  // Eliminate pivot coordinates from every row other than its own.
  void back_reduce() {
    const int n = static_cast<int>(rows_.size());
    for (int c = 0; c < n; ++c) {
      if (!has_[c]) continue;
      SparseVec& row = rows_[c];
      bool again = true;
      while (again) {
        again = false;
        for (const auto& [j, val] : row) {
          if (j != c && has_[j]) {
            row = sparse_axpy(F_, row, val, rows_[j]);
            again = true;
            break;
          }
        }
      }
    }
  }

  int rank() const noexcept { return rank_; }
  bool pivot(int c) const { return has_[c]; }
  const SparseVec& row(int c) const { return rows_[c]; }

 private:
  const Field& F_;
  std::vector<SparseVec> rows_;
  std::vector<bool> has_;
  int rank_ = 0;
};

// op applied on one factor of a pure tensor, as a sparse ambient vector
void apply_on_factor(const Matrix& T, const std::vector<int>& digits, int factor, const std::vector<int>& stride,
                     int base, Elem scale, const Field& F, SparseVec& out) {
  const int d = digits[factor];
  const int without = base - d * stride[factor];
  for (int r = 0; r < T.rows(); ++r) {
    const Elem t = T(r, d);
    if (t != 0) out.emplace_back(without + r * stride[factor], F.mul(scale, t));
  }
}

void merge_duplicates(const Field& F, SparseVec& v) {
  normalize(v);
  SparseVec out;
  for (const auto& [i, e] : v) {
    if (!out.empty() && out.back().first == i) {
      out.back().second = F.add(out.back().second, e);
      if (out.back().second == 0) out.pop_back();
    } else if (e != 0) {
      out.emplace_back(i, e);
    }
  }
  v = std::move(out);
}

}  // namespace

void accumulate(const Field& F, Elem s, const SparseVec& v, Vec& acc) {
  if (s == 0) return;
  for (const auto& [i, e] : v) acc[i] = F.add(acc[i], F.mul(s, e));
}

TensorExpr::TensorExpr(std::vector<Leaf> leaves, std::vector<Edge> edges)
    : leaves_(std::move(leaves)), edges_(std::move(edges)) {
  const int n = static_cast<int>(leaves_.size());
  if (n == 0) throw InvalidArgument("tensor expression needs a leaf");
  for (auto& l : leaves_) {
    if (!l.module) throw InvalidArgument("null leaf module");
    if (l.labels.empty()) l.labels = l.module->labels();
    if (static_cast<int>(l.labels.size()) != l.module->fold()) throw InvalidArgument("leaf label count mismatch");
  }
  if (static_cast<int>(edges_.size()) != n - 1) throw InvalidArgument("tensor expression must be a tree");
  std::vector<int> parent(n, -1);
  std::vector<std::vector<bool>> used(n);
  for (int i = 0; i < n; ++i) used[i].assign(leaves_[i].module->fold(), false);
  for (const auto& e : edges_) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n || e.from == e.to)
      throw InvalidArgument("edge refers to an invalid leaf");
    if (e.slot < 0 || e.slot >= leaves_[e.from].module->fold()) throw InvalidArgument("slot out of range");
    if (used[e.from][e.slot]) throw InvalidArgument("slot consumed twice");
    used[e.from][e.slot] = true;
    if (parent[e.to] >= 0) throw InvalidArgument("leaf consumed twice");
    parent[e.to] = e.from;
    if (!same_ring(*leaves_[e.from].module->right(e.slot).algebra, *leaves_[e.to].module->algebra()))
      throw InvalidArgument("algebra mismatch between slot and left action");
  }
  root_ = -1;
  for (int i = 0; i < n; ++i)
    if (parent[i] < 0) {
      if (root_ >= 0) throw InvalidArgument("tensor expression has several roots");
      root_ = i;
    }
  if (root_ < 0) throw InvalidArgument("tensor expression has a cycle");
  for (int i = 0; i < n; ++i) {
    int steps = 0;
    for (int j = i; j != root_; j = parent[j])
      if (++steps > n) throw InvalidArgument("tensor expression has a cycle");
  }

  const Field& F = leaves_[0].module->field();
  radix_.resize(n);
  long long amb = 1;
  for (int i = 0; i < n; ++i) {
    radix_[i] = leaves_[i].module->dim();
    amb *= radix_[i];
    if (amb > (1 << 22)) throw BudgetExceeded("tensor ambient space", static_cast<double>(amb));
  }
  auto q = std::make_shared<Quotient>();
  q->ambient = static_cast<int>(amb);
  std::vector<int> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * radix_[i + 1];

  RightEchelon ech(F, q->ambient);
  for (const auto& e : edges_) {
    const Action& rho = leaves_[e.from].module->right(e.slot);
    const Action& lam = leaves_[e.to].module->left();
    const Algebra& R = *rho.algebra;
    for (const auto& g : R.action_generators()) {
      const Matrix tr = act(F, rho, g);
      const Matrix tl = act(F, lam, g);
      for (int a = 0; a < q->ambient && ech.rank() < q->ambient; ++a) {
        const auto digits = decode(a);
        SparseVec v;
        apply_on_factor(tr, digits, e.from, stride, a, 1, F, v);
        apply_on_factor(tl, digits, e.to, stride, a, F.neg(1), F, v);
        merge_duplicates(F, v);
        ech.insert(std::move(v));
      }
    }
  }
  ech.back_reduce();

  std::vector<int> index_of(q->ambient, -1);
  for (int c = 0; c < q->ambient; ++c)
    if (!ech.pivot(c)) {
      index_of[c] = static_cast<int>(q->section.size());
      q->section.push_back(c);
    }
  q->project.resize(q->ambient);
  for (int c = 0; c < q->ambient; ++c) {
    if (!ech.pivot(c)) {
      q->project[c] = {{index_of[c], 1}};
      continue;
    }
    SparseVec p;
    for (const auto& [j, val] : ech.row(c))
      if (j != c) p.emplace_back(index_of[j], F.neg(val));
    q->project[c] = std::move(p);
  }

  const int dq = static_cast<int>(q->section.size());
  auto descend = [&](const Action& a, int factor) {
    std::vector<Matrix> tables;
    for (int b = 0; b < a.algebra->dim(); ++b) {
      Matrix t(dq, dq);
      for (int i = 0; i < dq; ++i) {
        const int amb_i = q->section[i];
        const auto digits = decode(amb_i);
        SparseVec v;
        apply_on_factor(a.basis[b], digits, factor, stride, amb_i, 1, F, v);
        Vec col(dq, 0);
        for (const auto& [j, e] : v) accumulate(F, e, q->project[j], col);
        t.set_column(i, col);
      }
      tables.push_back(std::move(t));
    }
    return action_from_basis(a.algebra, dq, std::move(tables), a.anti);
  };
  std::vector<ActionPtr> rights;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < leaves_[i].module->fold(); ++s) {
      if (used[i][s]) continue;
      rights.push_back(descend(leaves_[i].module->right(s), i));
      labels.push_back(leaves_[i].labels[s]);
      q->provenance.emplace_back(i, s);
    }
  q->module = std::make_shared<const NFoldBimodule>(dq, descend(leaves_[root_].module->left(), root_),
                                                    std::move(rights), std::move(labels));
  q_ = std::move(q);
}

std::vector<int> TensorExpr::decode(int ambient_index) const {
  const int n = static_cast<int>(radix_.size());
  std::vector<int> d(n);
  for (int i = n - 1; i >= 0; --i) {
    d[i] = ambient_index % radix_[i];
    ambient_index /= radix_[i];
  }
  return d;
}

int TensorExpr::encode(const std::vector<int>& digits) const {
  int a = 0;
  for (std::size_t i = 0; i < radix_.size(); ++i) a = a * radix_[i] + digits[i];
  return a;
}

namespace {

void check_sub(const TensorExpr& whole, const TensorExpr& part, const std::vector<int>& leaves, const char* what) {
  if (static_cast<int>(leaves.size()) != part.leaf_count()) throw InvalidArgument(std::string(what) + ": leaf count mismatch");
  for (std::size_t k = 0; k < leaves.size(); ++k)
    if (whole.leaves().at(leaves[k]).module != part.leaves()[k].module)
      throw InvalidArgument(std::string(what) + ": leaf module mismatch");
  for (const auto& e : part.edges()) {
    const Edge mapped{leaves[e.from], e.slot, leaves[e.to]};
    if (std::find(whole.edges().begin(), whole.edges().end(), mapped) == whole.edges().end())
      throw InvalidArgument(std::string(what) + ": internal edge missing");
  }
}

}  // namespace

Matrix induced_map(const TensorExpr& S, const TensorExpr& T, const std::vector<Block>& blocks,
                   const std::vector<std::pair<int, int>>& rest) {
  const Field& F = S.leaves()[0].module->field();
  std::vector<int> s_cover(S.leaf_count(), 0), t_cover(T.leaf_count(), 0);
  for (const auto& b : blocks) {
    check_sub(S, *b.dom, b.src, "block domain");
    check_sub(T, *b.cod, b.dst, "block codomain");
    if (b.map.rows() != b.cod->dim() || b.map.cols() != b.dom->dim())
      throw InvalidArgument("block map has wrong shape " + std::to_string(b.map.rows()) + "x" +
                            std::to_string(b.map.cols()) + ", expected " + std::to_string(b.cod->dim()) + "x" +
                            std::to_string(b.dom->dim()));
    for (int l : b.src) ++s_cover.at(l);
    for (int l : b.dst) ++t_cover.at(l);
  }
  for (const auto& [s, t] : rest) {
    if (S.leaves().at(s).module != T.leaves().at(t).module) throw InvalidArgument("identity leaf module mismatch");
    ++s_cover[s];
    ++t_cover[t];
  }
  for (int c : s_cover)
    if (c != 1) throw InvalidArgument("source leaves not covered exactly once");
  for (int c : t_cover)
    if (c != 1) throw InvalidArgument("target leaves not covered exactly once");

  // memo[b][dom ambient] = list of (coefficient, cod basis index)
  std::vector<std::vector<std::vector<std::pair<Elem, int>>>> memo(blocks.size());
  std::vector<std::vector<bool>> known(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    memo[b].resize(blocks[b].dom->ambient_dim());
    known[b].assign(blocks[b].dom->ambient_dim(), false);
  }
  Matrix out(T.dim(), S.dim());
  for (int i = 0; i < S.dim(); ++i) {
    const auto digits = S.section_digits(i);
    std::vector<int> base(T.leaf_count(), 0);
    for (const auto& [s, t] : rest) base[t] = digits[s];
    std::vector<std::pair<Elem, std::vector<int>>> partial{{1, base}};
    for (std::size_t b = 0; b < blocks.size() && !partial.empty(); ++b) {
      const Block& blk = blocks[b];
      std::vector<int> sub(blk.src.size());
      for (std::size_t k = 0; k < blk.src.size(); ++k) sub[k] = digits[blk.src[k]];
      const int a = blk.dom->encode(sub);
      if (!known[b][a]) {
        Vec img(blk.cod->dim(), 0);
        for (const auto& [j, e] : blk.dom->project(a))
          for (int r = 0; r < static_cast<int>(img.size()); ++r) img[r] = F.add(img[r], F.mul(e, blk.map(r, j)));
        for (int r = 0; r < static_cast<int>(img.size()); ++r)
          if (img[r] != 0) memo[b][a].emplace_back(img[r], r);
        known[b][a] = true;
      }
      std::vector<std::pair<Elem, std::vector<int>>> next;
      for (const auto& [c, tdig] : partial)
        for (const auto& [e, r] : memo[b][a]) {
          auto nd = tdig;
          const auto cd = blk.cod->section_digits(r);
          for (std::size_t k = 0; k < blk.dst.size(); ++k) nd[blk.dst[k]] = cd[k];
          next.emplace_back(F.mul(c, e), std::move(nd));
        }
      partial = std::move(next);
    }
    Vec col(T.dim(), 0);
    for (const auto& [c, tdig] : partial) accumulate(F, c, T.project(T.encode(tdig)), col);
    out.set_column(i, col);
  }
  return out;
}

Matrix collapse_left(const TensorExpr& E) {
  if (E.leaf_count() != 2 || E.edges()[0] != Edge{0, 0, 1}) throw InvalidArgument("left collapse needs [R, Y] with edge (0,0->1)");
  const NFoldBimodule& Rm = *E.leaves()[0].module;
  const NFoldBimodule& Y = *E.leaves()[1].module;
  if (Rm.fold() != 1 || Rm.dim() != Y.algebra()->dim()) throw InvalidArgument("left collapse needs the regular bimodule");
  Matrix out(Y.dim(), E.dim());
  for (int i = 0; i < E.dim(); ++i) {
    const auto d = E.section_digits(i);
    out.set_column(i, Y.left().basis[d[0]].column(d[1]));
  }
  return out;
}

Matrix collapse_right(const TensorExpr& E) {
  if (E.leaf_count() != 2 || E.edges()[0].from != 0 || E.edges()[0].to != 1)
    throw InvalidArgument("right collapse needs [M, R] with edge (0,s->1)");
  const int s = E.edges()[0].slot;
  const NFoldBimodule& M = *E.leaves()[0].module;
  const NFoldBimodule& Rm = *E.leaves()[1].module;
  if (Rm.dim() != M.right(s).algebra->dim()) throw InvalidArgument("right collapse needs the regular bimodule");
  Matrix out(M.dim(), E.dim());
  for (int i = 0; i < E.dim(); ++i) {
    const auto d = E.section_digits(i);
    out.set_column(i, M.right(s).basis[d[1]].column(d[0]));
  }
  return out;
}

TensorSpace tensor_over_R(const BimodulePtr& M, int slot, const BimodulePtr& N) {
  if (slot < 0 || slot >= M->fold()) throw InvalidArgument("slot out of range");
  return TensorSpace{TensorExpr({Leaf{M, {}}, Leaf{N, {}}}, {Edge{0, slot, 1}})};
}

}  // namespace smc

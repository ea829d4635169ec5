#include "smc/matrix.hpp"

#include "smc/errors.hpp"

namespace smc {

Matrix::Matrix(int rows, int cols, std::vector<Elem> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != static_cast<std::size_t>(rows) * cols) throw InvalidArgument("matrix data size mismatch");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vec Matrix::column(int c) const {
  Vec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(int c, std::span<const Elem> v) {
  for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

bool Matrix::is_zero() const noexcept {
  for (Elem e : data_)
    if (e != 0) return false;
  return true;
}

namespace la {

Matrix mul(const Field& F, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product dimension mismatch");
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Elem s = a(i, k);
      if (s == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        const Elem t = b(k, j);
        if (t != 0) out(i, j) = F.add(out(i, j), F.mul(s, t));
      }
    }
  }
  return out;
}

Matrix add(const Field& F, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("matrix sum dimension mismatch");
  Matrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = F.add(a(i, j), b(i, j));
  return out;
}

Matrix sub(const Field& F, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("matrix difference dimension mismatch");
  Matrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = F.sub(a(i, j), b(i, j));
  return out;
}

Matrix scale(const Field& F, Elem s, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = F.mul(s, a(i, j));
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix kron(const Field& F, const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Elem s = a(i, j);
      if (s == 0) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = F.mul(s, b(k, l));
    }
  return out;
}

Vec apply(const Field& F, const Matrix& a, std::span<const Elem> v) {
  Vec out(a.rows(), 0);
  for (int i = 0; i < a.rows(); ++i) {
    Elem acc = 0;
    for (int j = 0; j < a.cols(); ++j) {
      if (v[j] != 0 && a(i, j) != 0) acc = F.add(acc, F.mul(a(i, j), v[j]));
    }
    out[i] = acc;
  }
  return out;
}

void axpy(const Field& F, Elem s, std::span<const Elem> x, std::span<Elem> y) {
  if (s == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) y[i] = F.add(y[i], F.mul(s, x[i]));
}

Echelon rref(const Field& F, Matrix a) {
  const int rows = a.rows(), cols = a.cols();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (a(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < cols; ++j) std::swap(a(sel, j), a(r, j));
    const Elem inv = F.inv(a(r, c));
    for (int j = 0; j < cols; ++j) a(r, j) = F.mul(inv, a(r, j));
    for (int i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Elem f = F.neg(a(i, c));
      for (int j = c; j < cols; ++j)
        if (a(r, j) != 0) a(i, j) = F.add(a(i, j), F.mul(f, a(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix reduced(r, cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) reduced(i, j) = a(i, j);
  return {std::move(reduced), std::move(pivots)};
}

int rank(const Field& F, const Matrix& a) {
  SubspaceBasis basis(F, a.cols());
  for (int i = 0; i < a.rows(); ++i) basis.insert(Vec(a.row(i).begin(), a.row(i).end()));
  return basis.dimension();
}

bool invertible(const Field& F, const Matrix& a) {
  return a.square() && rank(F, a) == a.rows();
}

Matrix nullspace(const Field& F, const Matrix& a) {
  const Echelon e = rref(F, a);
  const int n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix basis(n, static_cast<int>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const int fc = free_cols[k];
    basis(fc, static_cast<int>(k)) = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      basis(e.pivots[i], static_cast<int>(k)) = F.neg(e.reduced(static_cast<int>(i), fc));
    }
  }
  return basis;
}

std::optional<Matrix> inverse(const Field& F, const Matrix& a) {
  if (!a.square()) return std::nullopt;
  const int n = a.rows();
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  const Echelon e = rref(F, std::move(aug));
  if (static_cast<int>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::optional<Vec> solve(const Field& F, const Matrix& a, std::span<const Elem> b) {
  const int n = a.cols();
  Matrix aug(a.rows(), n + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  const Echelon e = rref(F, std::move(aug));
  Vec x(n, 0);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == n) return std::nullopt;
    x[e.pivots[i]] = e.reduced(static_cast<int>(i), n);
  }
  return x;
}

Matrix from_columns(int n, const std::vector<Vec>& cols) {
  Matrix m(n, static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(static_cast<int>(c), cols[c]);
  return m;
}

}  // namespace la

Vec SubspaceBasis::reduce(Vec v) const {
  for (int c = 0; c < n_; ++c) {
    if (v[c] == 0) continue;
    const int r = pivot_row_[c];
    if (r < 0) continue;
    la::axpy(*F_, F_->neg(v[c]), rows_[r], v);
  }
  return v;
}

bool SubspaceBasis::insert(Vec v) {
  v = reduce(std::move(v));
  int lead = -1;
  for (int c = 0; c < n_; ++c)
    if (v[c] != 0) {
      lead = c;
      break;
    }
  if (lead < 0) return false;
  const Elem inv = F_->inv(v[lead]);
  for (auto& e : v) e = F_->mul(inv, e);
  // Keep rows fully reduced so reduce() can process columns left to right.
  for (auto& row : rows_) {
    if (row[lead] != 0) la::axpy(*F_, F_->neg(row[lead]), v, row);
  }
  pivot_row_[lead] = static_cast<int>(rows_.size());
  pivots_.push_back(lead);
  rows_.push_back(std::move(v));
  return true;
}

bool SubspaceBasis::contains(Vec v) const {
  v = reduce(std::move(v));
  for (Elem e : v)
    if (e != 0) return false;
  return true;
}

}  // namespace smc

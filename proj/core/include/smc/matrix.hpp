#pragma once

#include <optional>
#include <span>
#include <vector>

#include "smc/field.hpp"

namespace smc {

using Vec = std::vector<Elem>;

/// Dense row-major matrix of field codes. Arithmetic lives in `la` and takes
/// the field explicitly; a Matrix does not know which field it is over.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}
  Matrix(int rows, int cols, std::vector<Elem> data);

  static Matrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Elem operator()(int r, int c) const noexcept { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Elem& operator()(int r, int c) noexcept { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  const std::vector<Elem>& data() const noexcept { return data_; }
  std::span<const Elem> row(int r) const { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
  Vec column(int c) const;
  void set_column(int c, std::span<const Elem> v);

  bool is_zero() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix& a, const Matrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return a.data_ <=> b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Elem> data_;
};

namespace la {

Matrix mul(const Field& F, const Matrix& a, const Matrix& b);
Matrix add(const Field& F, const Matrix& a, const Matrix& b);
Matrix sub(const Field& F, const Matrix& a, const Matrix& b);
Matrix scale(const Field& F, Elem s, const Matrix& a);
Matrix transpose(const Matrix& a);
/// Kronecker product; row (i*rb + k), column (j*cb + l) holds a(i,j)*b(k,l).
Matrix kron(const Field& F, const Matrix& a, const Matrix& b);
Vec apply(const Field& F, const Matrix& a, std::span<const Elem> v);
/// y += s * x
void axpy(const Field& F, Elem s, std::span<const Elem> x, std::span<Elem> y);

struct Echelon {
  Matrix reduced;           // reduced row echelon form, zero rows dropped
  std::vector<int> pivots;  // pivot column of each row
};

Echelon rref(const Field& F, Matrix a);
int rank(const Field& F, const Matrix& a);
bool invertible(const Field& F, const Matrix& a);
/// Columns form a basis of {x : a x = 0}, free variables in increasing order.
Matrix nullspace(const Field& F, const Matrix& a);
std::optional<Matrix> inverse(const Field& F, const Matrix& a);
/// Some x with a x = b, if one exists (free variables set to zero).
std::optional<Vec> solve(const Field& F, const Matrix& a, std::span<const Elem> b);
/// Matrix whose columns are the given vectors (all of length n).
Matrix from_columns(int n, const std::vector<Vec>& cols);

}  // namespace la

/// Incrementally built row-echelon basis of a subspace of F^n.
class SubspaceBasis {
 public:
  SubspaceBasis(const Field& F, int n) : F_(&F), n_(n), pivot_row_(n, -1) {}
  /// Reduces v against the basis; returns true (and stores it) if independent.
  bool insert(Vec v);
  bool contains(Vec v) const;
  /// Residue of v after reduction against the basis.
  Vec reduce(Vec v) const;
  int dimension() const noexcept { return static_cast<int>(rows_.size()); }
  int ambient() const noexcept { return n_; }
  const std::vector<Vec>& rows() const noexcept { return rows_; }

 private:
  const Field* F_;
  int n_;
  std::vector<Vec> rows_;        // each normalized with leading 1 at its pivot
  std::vector<int> pivot_row_;   // pivot column -> row index
  std::vector<int> pivots_;
};

}  // namespace smc

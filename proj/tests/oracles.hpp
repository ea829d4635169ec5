#pragma once

// Brute-force reference computations, written without the library's linear
// algebra so they can check it.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <set>
#include <vector>

#include "smc/bimodule.hpp"

namespace oracle {

using smc::Elem;
using smc::Field;
using smc::Matrix;

inline Matrix matmul(const Field& F, const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Elem s = 0;
      for (int k = 0; k < a.cols(); ++k) s = F.add(s, F.mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  return c;
}

inline int rank(const Field& F, Matrix a) {
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (int j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    const Elem inv = F.inv(a(r, c));
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Elem f = F.mul(a(i, c), inv);
      for (int j = 0; j < a.cols(); ++j) a(i, j) = F.sub(a(i, j), F.mul(f, a(r, j)));
    }
    ++r;
  }
  return r;
}

// Calls f on every rows x cols matrix over F.
inline void for_each_matrix(const Field& F, int rows, int cols, const std::function<void(const Matrix&)>& f) {
  Matrix m(rows, cols);
  const int n = rows * cols;
  std::vector<int> digits(n, 0);
  while (true) {
    for (int i = 0; i < n; ++i) m(i / cols, i % cols) = static_cast<Elem>(digits[i]);
    f(m);
    int i = 0;
    while (i < n && ++digits[i] == F.order()) digits[i++] = 0;
    if (i == n) return;
  }
}

// Number of linear maps f : M -> N commuting with the left action and with
// right slot t of M against slot perm[t] of N, by direct enumeration.
inline long long count_intertwiners(const smc::NFoldBimodule& M, const smc::NFoldBimodule& N,
                                    const std::vector<int>& perm) {
  const Field& F = M.field();
  long long count = 0;
  for_each_matrix(F, N.dim(), M.dim(), [&](const Matrix& f) {
    for (std::size_t g = 0; g < M.left().gens.size(); ++g)
      if (matmul(F, f, M.left().gens[g]) != matmul(F, N.left().gens[g], f)) return;
    for (int t = 0; t < M.fold(); ++t)
      for (std::size_t g = 0; g < M.right(t).gens.size(); ++g)
        if (matmul(F, f, M.right(t).gens[g]) != matmul(F, N.right(perm[t]).gens[g], f)) return;
    ++count;
  });
  return count;
}

inline long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// dim_k of M (x)_R N over slot s of M, as dim(M (x)_k N) minus the rank of
// the balancing relations m.g (x) n - m (x) g.n.
inline int tensor_dim(const smc::NFoldBimodule& M, int s, const smc::NFoldBimodule& N) {
  const Field& F = M.field();
  const int dm = M.dim(), dn = N.dim();
  std::vector<std::vector<Elem>> rows;
  for (std::size_t g = 0; g < M.right(s).gens.size(); ++g) {
    const Matrix& rg = M.right(s).gens[g];
    const Matrix& lg = N.left().gens[g];
    for (int i = 0; i < dm; ++i)
      for (int j = 0; j < dn; ++j) {
        std::vector<Elem> v(dm * dn, 0);
        for (int a = 0; a < dm; ++a) v[a * dn + j] = F.add(v[a * dn + j], rg(a, i));
        for (int b = 0; b < dn; ++b) v[i * dn + b] = F.sub(v[i * dn + b], lg(b, j));
        rows.push_back(v);
      }
  }
  if (rows.empty()) return dm * dn;
  Matrix A(static_cast<int>(rows.size()), dm * dn);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < dm * dn; ++c) A(static_cast<int>(r), c) = rows[r][c];
  return dm * dn - rank(F, A);
}

inline bool invertible(const Field& F, const Matrix& m) { return m.rows() == m.cols() && rank(F, m) == m.rows(); }

// Orbits of tuples of m x m matrices under simultaneous conjugation by GL_m(F).
inline long long count_orbits(const Field& F, int m, const std::vector<std::vector<Matrix>>& tuples) {
  std::vector<std::pair<Matrix, Matrix>> group;  // (P, P^-1)
  for_each_matrix(F, m, m, [&](const Matrix& P) {
    if (!invertible(F, P)) return;
    Matrix Q;
    for_each_matrix(F, m, m, [&](const Matrix& C) {
      if (Q.rows() == 0 && matmul(F, P, C) == Matrix::identity(m)) Q = C;
    });
    group.emplace_back(P, Q);
  });
  std::set<std::vector<Elem>> canon;
  for (const auto& t : tuples) {
    std::vector<Elem> best;
    for (const auto& [P, Q] : group) {
      std::vector<Elem> code;
      for (const auto& x : t) {
        const auto y = matmul(F, matmul(F, P, x), Q);
        code.insert(code.end(), y.data().begin(), y.data().end());
      }
      if (best.empty() || code < best) best = code;
    }
    canon.insert(best);
  }
  return static_cast<long long>(canon.size());
}

// Elements of the unit group of F as a set of codes, and its squares and cubes.
inline std::set<Elem> powers(const Field& F, int e) {
  std::set<Elem> out;
  for (int a = 1; a < F.order(); ++a) {
    Elem p = 1;
    for (int i = 0; i < e; ++i) p = F.mul(p, static_cast<Elem>(a));
    out.insert(p);
  }
  return out;
}

// Seed for randomized suites: SMCALG_SEED when set, else a fixed default.
inline std::uint64_t test_seed() {
  const char* s = std::getenv("SMCALG_SEED");
  return s ? std::strtoull(s, nullptr, 0) : 0x5eedULL;
}

}  // namespace oracle

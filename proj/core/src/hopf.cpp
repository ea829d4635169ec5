#include <sstream>

#include "legs.hpp"
#include "smc/constructions.hpp"
#include "smc/errors.hpp"

namespace smc {

namespace {

// x in H (x) H (index p*d + q) times y, componentwise.
Vec tensor_mul(const Algebra& H, const Vec& x, const Vec& y) {
  const Field& F = H.field();
  const int d = H.dim();
  Vec out(static_cast<std::size_t>(d) * d, 0);
  for (int i = 0; i < d * d; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < d * d; ++j) {
      if (y[j] == 0) continue;
      const Elem s = F.mul(x[i], y[j]);
      const Vec& a = H.product(i / d, j / d);
      const Vec& b = H.product(i % d, j % d);
      for (int p = 0; p < d; ++p) {
        if (a[p] == 0) continue;
        for (int q = 0; q < d; ++q)
          if (b[q] != 0) out[p * d + q] = F.add(out[p * d + q], F.mul(s, F.mul(a[p], b[q])));
      }
    }
  }
  return out;
}

Vec delta_of(const HopfAlgebra& H, const Vec& v) { return la::apply(H.algebra->field(), H.delta, v); }

Elem counit_of(const HopfAlgebra& H, const Vec& v) {
  const Field& F = H.algebra->field();
  Elem s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s = F.add(s, F.mul(H.counit[i], v[i]));
  return s;
}

std::string vec_text(const Vec& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << int(v[i]);
  return os.str();
}

}  // namespace

std::vector<std::string> verify_hopf(const HopfAlgebra& H) {
  std::vector<std::string> out;
  const Algebra& A = *H.algebra;
  const Field& F = A.field();
  const int d = A.dim();
  if (H.delta.rows() != d * d || H.delta.cols() != d || static_cast<int>(H.counit.size()) != d ||
      H.antipode.rows() != d || H.antipode.cols() != d) {
    out.push_back("shape: delta, counit or antipode has the wrong size");
    return out;
  }
  Vec one_one(static_cast<std::size_t>(d) * d, 0);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) one_one[p * d + q] = F.mul(A.unit()[p], A.unit()[q]);
  if (delta_of(H, A.unit()) != one_one) out.push_back("delta is not unital");
  if (counit_of(H, A.unit()) != 1) out.push_back("counit is not unital");

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Vec prod = A.product(i, j);
      if (delta_of(H, prod) != tensor_mul(A, H.delta.column(i), H.delta.column(j)))
        out.push_back("delta is not multiplicative on (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      if (counit_of(H, prod) != F.mul(H.counit[i], H.counit[j]))
        out.push_back("counit is not multiplicative on (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }

  for (int i = 0; i < d; ++i) {
    const Vec D = H.delta.column(i);
    // (delta (x) 1) delta and (1 (x) delta) delta in H^{(x)3}, index (p*d+q)*d+r
    Vec left(static_cast<std::size_t>(d) * d * d, 0), right(left.size(), 0);
    Vec lc(d, 0), rc(d, 0), sl(d, 0), sr(d, 0);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        const Elem c = D[p * d + q];
        if (c == 0) continue;
        const Vec dp = H.delta.column(p);
        const Vec dq = H.delta.column(q);
        for (int x = 0; x < d * d; ++x) {
          if (dp[x] != 0) left[x * d + q] = F.add(left[x * d + q], F.mul(c, dp[x]));
          if (dq[x] != 0) right[p * d * d + x] = F.add(right[p * d * d + x], F.mul(c, dq[x]));
        }
        lc[q] = F.add(lc[q], F.mul(c, H.counit[p]));
        rc[p] = F.add(rc[p], F.mul(c, H.counit[q]));
        la::axpy(F, c, A.multiply(H.antipode.column(p), A.basis_vector(q)), sl);
        la::axpy(F, c, A.multiply(A.basis_vector(p), H.antipode.column(q)), sr);
      }
    const std::string at = " on e" + std::to_string(i);
    if (left != right) out.push_back("delta is not coassociative" + at);
    if (lc != A.basis_vector(i) || rc != A.basis_vector(i)) out.push_back("counit law fails" + at);
    Vec target = A.unit();
    for (auto& t : target) t = F.mul(t, H.counit[i]);
    if (sl != target || sr != target)
      out.push_back("antipode law fails" + at + " (got " + vec_text(sl) + " and " + vec_text(sr) + ")");
  }
  return out;
}

bool is_cocommutative(const HopfAlgebra& H) {
  const int d = H.algebra->dim();
  for (int i = 0; i < d; ++i)
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        if (H.delta(p * d + q, i) != H.delta(q * d + p, i)) return false;
  return true;
}

HopfAlgebra char2_hopf(FieldPtr k, int a) {
  if (k->characteristic() != 2) throw InvalidArgument("characteristic 2 required");
  if (a != 0 && a != 1) throw InvalidArgument("the x(x)x coefficient must be 0 or 1");
  auto R = make_quotient_algebra(k, {0, 0, 1});
  HopfAlgebra H{R, Matrix(4, 2), {1, 0}, Matrix::identity(2)};
  H.delta(0, 0) = 1;
  H.delta(1, 1) = 1;
  H.delta(2, 1) = 1;
  H.delta(3, 1) = static_cast<Elem>(a);
  return H;
}

HopfAlgebra group_hopf(FieldPtr k, const std::vector<int>& cyclic_orders) {
  auto R = make_group_algebra(k, cyclic_orders);
  const int d = R->dim();
  HopfAlgebra H{R, Matrix(d * d, d), Vec(d, 1), Matrix(d, d)};
  for (int g = 0; g < d; ++g) {
    H.delta(g * d + g, g) = 1;
    for (int h = 0; h < d; ++h)
      if (R->product(g, h) == R->unit()) H.antipode(h, g) = 1;
  }
  return H;
}

SmcStructure hopf_structure(const HopfAlgebra& H) {
  if (auto errs = verify_hopf(H); !errs.empty()) throw InvalidArgument("not a Hopf algebra: " + errs.front());
  if (!is_cocommutative(H)) throw InvalidArgument("the Hopf algebra must be cocommutative");
  const AlgebraPtr& R = H.algebra;
  const Field& F = R->field();
  const int d = R->dim();
  const int n = d * d;

  // Lambda = R_B (x)_k R_A, e_i (x) e_j at i*d + j
  std::vector<Matrix> left(d), s0(d), s1(d);
  for (int g = 0; g < d; ++g) {
    left[g] = Matrix(n, n);
    s0[g] = Matrix(n, n);
    s1[g] = Matrix(n, n);
    const Vec D = H.delta.column(g);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const int col = i * d + j;
        const Vec& ri = R->product(i, g);
        const Vec& rj = R->product(j, g);
        for (int t = 0; t < d; ++t) {
          if (ri[t]) s0[g](t * d + j, col) = ri[t];
          if (rj[t]) s1[g](i * d + t, col) = rj[t];
        }
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) {
            const Elem c = D[p * d + q];
            if (c == 0) continue;
            const Vec& a = R->product(p, i);
            const Vec& b = R->product(q, j);
            for (int x = 0; x < d; ++x)
              for (int y = 0; y < d; ++y)
                if (a[x] && b[y]) left[g](x * d + y, col) = F.add(left[g](x * d + y, col), F.mul(c, F.mul(a[x], b[y])));
          }
      }
  }
  auto lambda = std::make_shared<const NFoldBimodule>(
      n, action_from_basis(R, n, left, false),
      std::vector<ActionPtr>{action_from_basis(R, n, s0, true), action_from_basis(R, n, s1, true)},
      std::vector<std::string>{"B", "A"});
  std::vector<Matrix> kt(d, Matrix(1, 1));
  for (int g = 0; g < d; ++g) kt[g](0, 0) = H.counit[g];
  auto unit = std::make_shared<const NFoldBimodule>(1, action_from_basis(R, 1, kt, false), std::vector<ActionPtr>{});
  const auto sp = make_spaces(lambda, unit);

  Matrix l(d, sp->dl.dim());
  for (int b = 0; b < sp->dl.dim(); ++b) {
    const int lam = sp->dl.section_digits(b)[0];
    l(lam / d, b) = H.counit[lam % d];
  }

  Matrix c(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c(j * d + i, i * d + j) = 1;

  // a((x(x)y)(x)(z(x)w)) = sum (1 (x) y''w) (x) (x (x) y'z)
  Matrix a(sp->ca.dim(), sp->da.dim());
  const Vec& one = R->unit();
  for (int b = 0; b < sp->da.dim(); ++b) {
    const auto dig = sp->da.section_digits(b);
    const int x = dig[0] / d, y = dig[0] % d, z = dig[1] / d, w = dig[1] % d;
    const Vec D = H.delta.column(y);
    Vec col(sp->ca.dim(), 0);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        const Elem cpq = D[p * d + q];
        if (cpq == 0) continue;
        const Vec& qw = R->product(q, w);
        const Vec& pz = R->product(p, z);
        for (int s = 0; s < d; ++s) {
          if (one[s] == 0) continue;
          for (int t = 0; t < d; ++t) {
            if (qw[t] == 0) continue;
            for (int u = 0; u < d; ++u) {
              if (pz[u] == 0) continue;
              const Elem coef = F.mul(cpq, F.mul(one[s], F.mul(qw[t], pz[u])));
              accumulate(F, coef, sp->ca.project((s * d + t) * n + (x * d + u)), col);
            }
          }
        }
      }
    a.set_column(b, col);
  }
  auto S = make_structure(sp, std::move(a), std::move(l), std::move(c), "hopf " + R->label());
  if (!coherence_report(S).clean()) throw VerificationError("Hopf-induced structure failed coherence");
  return S;
}

}  // namespace smc

#pragma once

#include <string>
#include <vector>

#include "smc/structure.hpp"

namespace smc {

/// Hopf algebra on an algebra H: delta column i is Delta(e_i) in the basis
/// e_p (x) e_q (index p*d + q); counit row; antipode table (column i = S(e_i)).
struct HopfAlgebra {
  AlgebraPtr algebra;
  Matrix delta;
  Vec counit;
  Matrix antipode;
};

/// Empty iff every Hopf axiom holds (coassociativity, counit, algebra maps, antipode).
std::vector<std::string> verify_hopf(const HopfAlgebra& H);
bool is_cocommutative(const HopfAlgebra& H);

/// Over F_{2^e}[x]/(x^2): Delta(x) = 1(x)x + x(x)1 + a x(x)x, a in {0, 1}.
HopfAlgebra char2_hopf(FieldPtr k, int a);
/// k[Z/n1 x ...] with group-like comultiplication.
HopfAlgebra group_hopf(FieldPtr k, const std::vector<int>& cyclic_orders);

SmcStructure standard_structure(const AlgebraPtr& R);
SmcStructure hopf_structure(const HopfAlgebra& H);

struct Thm32Params {
  FieldPtr field;
  int b1 = 0;     // 0: H0 shape, 1: H1 shape
  Elem beta = 0;  // c(m) = m + beta x (m.2x)
  Elem gamma = 0; // a(m(x)m) = m(x)m + gamma x (n(x)n); only with b1 = 0
  bool verify = true;
};

/// The free bimodule on m over k[x]/(x^2) in characteristic 2, basis
/// (m, xm, n, xn) with n = m.2x.
BimodulePtr thm32_lambda(const AlgebraPtr& R, int b1);
SmcStructure thm32_structure(const Thm32Params& p);
/// Reads (b1, beta, gamma) off a structure whose Lambda is thm32_lambda(R, b1).
struct Thm32Reading {
  int b1;
  Elem beta;
  Elem gamma;
};
Thm32Reading read_thm32(const SmcStructure& S);

/// Over k[Z/2] (odd characteristic): unit k_+, k_- ^ k_- = M.
SmcStructure char_ne2_structure(const AlgebraPtr& R, const BimodulePtr& M);
/// The same structure transported along the automorphism g -> -g (unit k_-).
SmcStructure char_ne2_mirror(const SmcStructure& S);

/// Twist every action of a bimodule by an algebra automorphism theta
/// (matrix, column i = theta(e_i)).
BimodulePtr twist_bimodule(const BimodulePtr& M, const Matrix& theta);

struct MoritaContext {
  AlgebraPtr R, T;
  BimodulePtr P;  // left R, right T
  BimodulePtr Q;  // left T, right R
  Matrix pq;      // P (x)_T Q -> R
  Matrix qp;      // Q (x)_R P -> T
};

std::vector<std::string> validate_context(const MoritaContext& ctx);
/// F_q (row space, column space) with M_n(F_q).
MoritaContext matrix_context(FieldPtr k, int n);
MoritaContext identity_context(const AlgebraPtr& R);
SmcStructure morita_transport(const SmcStructure& S, const MoritaContext& ctx);

}  // namespace smc

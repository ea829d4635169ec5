#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smc/hom.hpp"
#include "smc/tensor.hpp"

namespace smc {

/// Canonical tensor spaces attached to a pair (Lambda, K). Slot 0 of Lambda
/// carries the right-hand factor and slot 1 the left-hand one, so that
/// A^B = Lambda (x)_1 A (x)_0 B.
struct StructureSpaces {
  BimodulePtr lambda, unit, regular;  // regular: R with one slot
  TensorExpr da;   // [L(C,L), L(B,A)], (0,1->1): source of a
  TensorExpr ca;   // [L(L,A), L(C,B)], (0,0->1): target of a
  TensorExpr dl;   // [L(B,K), K], (0,1->1): source of l
  TensorExpr lam;  // [L(B,A)]
  TensorExpr reg;  // [R(B)]
  // pentagon
  TensorExpr p0, p1, p2, p3, q1, q2;
  // unit compatibility
  TensorExpr u0, u1, u2, v0, v1;
};

std::shared_ptr<const StructureSpaces> make_spaces(const BimodulePtr& lambda, const BimodulePtr& unit);

/// Candidate closed symmetric monoidal structure (Lambda, K, a, l, c).
struct SmcStructure {
  AlgebraPtr ring;
  std::shared_ptr<const StructureSpaces> spaces;
  Matrix a;  // Q(da) -> Q(ca)
  Matrix l;  // Q(dl) -> R
  Matrix c;  // Lambda -> Lambda, slot 0 <-> slot 1
  std::string name;

  const BimodulePtr& lambda() const { return spaces->lambda; }
  const BimodulePtr& unit() const { return spaces->unit; }
  Intertwiner a_map() const;
  Intertwiner l_map() const;
  Intertwiner c_map() const;
};

SmcStructure make_structure(const BimodulePtr& lambda, const BimodulePtr& unit, Matrix a, Matrix l, Matrix c,
                            std::string name = {});
SmcStructure make_structure(std::shared_ptr<const StructureSpaces> spaces, Matrix a, Matrix l, Matrix c,
                            std::string name = {});

/// Shapes, invertibility and intertwining of a, l, c; empty when well formed.
std::vector<std::string> validate_structure(const SmcStructure& S);

struct CoherenceWitness {
  std::string condition;
  int basis_index = -1;  // first basis element of the source space where the composites differ
  std::string detail;
};

struct CoherenceReport {
  bool pentagon = false;
  bool unit = false;
  bool hexagon = false;
  bool involutive = false;
  std::vector<CoherenceWitness> witnesses;
  bool clean() const { return pentagon && unit && hexagon && involutive; }
};

CoherenceReport coherence_report(const SmcStructure& S);

/// A^B as a left module together with its expression [L(B,A), A, B].
struct Smash {
  TensorExpr expr;
  BimodulePtr module() const { return expr.module(); }
};
Smash smash(const SmcStructure& S, const BimodulePtr& A, const BimodulePtr& B);
/// f^g : A^B -> A'^B' for module maps f : A -> A', g : B -> B'.
Matrix smash_map(const Smash& src, const Smash& dst, const Matrix& f, const Matrix& g);

/// Hom_R(Lambda (x)_0 B, P) with R acting through slot 1.
BimodulePtr internal_hom(const SmcStructure& S, const BimodulePtr& B, const BimodulePtr& P);

struct SolveOptions {
  long long budget = 1LL << 22;  // per hom-space scan
  int shards = 1;
  bool require_all = true;       // false: stop at the first solution
};

/// All coherent (a, l, c) on (Lambda, K), deterministic order.
std::vector<SmcStructure> solve_coherence(const BimodulePtr& lambda, const BimodulePtr& unit,
                                          const SolveOptions& opts = {});

}  // namespace smc

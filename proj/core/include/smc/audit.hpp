#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smc/structure.hpp"

namespace smc {

struct AuditItem {
  std::string name;
  bool applicable = true;
  bool pass = true;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditItem> items;
  // Reported without assertion.
  bool unit_principal = false;
  int submodules = 0;            // nonzero proper submodules of K
  int submodule_collisions = 0;  // pairs sharing a two-sided ideal
  bool clean() const {
    for (const auto& i : items)
      if (i.applicable && !i.pass) return false;
    return true;
  }
};

struct AuditOptions {
  int random_maps = 100;
  int module_dim = 2;             // test modules for reflection
  std::uint64_t seed = 0x5eedULL;
  long long ring_scan_cap = 256;  // |R| bound for ideal scans
};

/// Consequences every closed symmetric monoidal structure must satisfy:
/// reflection by Lambda, faithfulness, End(K) in Z(R), summands versus
/// central idempotents, the ideal-quotient shape of K over reduced
/// commutative rings, simplicity of K over simple rings, and generation
/// of K by the factors of the preimage of 1.
AuditReport structural_audit(const SmcStructure& S, const AuditOptions& opts = {});

/// Invariant subspaces of k^m under the given tables, as reduced echelon
/// row bases; includes 0 and the whole space. Sorted by (dimension, rows).
std::vector<Matrix> invariant_subspaces(const Field& F, int m, const std::vector<Matrix>& tables);
/// Two-sided ideals of R (rows are coordinate vectors).
std::vector<Matrix> two_sided_ideals(const Algebra& R);
/// The submodule of M spanned by the rows of `rows`, with restricted action.
BimodulePtr submodule(const NFoldBimodule& M, const Matrix& rows);
/// M / N for an invariant subspace N (rows), fold-0 only.
BimodulePtr quotient_module(const NFoldBimodule& M, const Matrix& rows);

}  // namespace smc

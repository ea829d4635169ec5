#pragma once

#include <vector>

#include "smc/bimodule.hpp"

namespace smc {

struct EnumOptions {
  double budget = 2e7;               // largest candidate space scanned for one table
  long long group_cap = 1LL << 20;   // largest centralizer listed element by element
  int shards = 1;
};

struct EnumStats {
  long long candidates = 0;  // tables passing the relation filters
  long long orbits = 0;      // classes found across all stages
};

/// Fold-0 modules of k-dimension m, one per isomorphism class, each the
/// lexicographically least table encoding in its class; sorted by encoding.
std::vector<BimodulePtr> enumerate_left_modules(const AlgebraPtr& R, int m, const EnumOptions& opts = {},
                                                EnumStats* stats = nullptr);
/// Fold-n bimodules of k-dimension m up to isomorphism (identity slot
/// correspondence), same conventions as enumerate_left_modules.
std::vector<BimodulePtr> enumerate_bimodules(const AlgebraPtr& R, int n, int m, const EnumOptions& opts = {},
                                             EnumStats* stats = nullptr);

/// Basis of {X : X T = T X for every T in tables}.
std::vector<Matrix> centralizer(const Field& F, int m, const std::vector<Matrix>& tables);
/// A generating set of GL_m(F).
std::vector<Matrix> gl_generators(const Field& F, int m);

/// Monic polynomials are coefficient vectors, low degree first.
std::vector<Elem> minimal_polynomial(const Algebra& R, const Vec& element);
Matrix companion(int m, const std::vector<Elem>& monic, const Field& F);

}  // namespace smc

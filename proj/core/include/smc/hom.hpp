#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "smc/bimodule.hpp"

namespace smc {

inline constexpr long long kExhaustiveCap = 1LL << 20;

struct HomOptions {
  long long exhaustive_cap = kExhaustiveCap;
  int random_attempts = 64;
  std::uint64_t seed = 0x5eedULL;
};

/// Basis (reduced echelon order) of linear maps f : M -> N with f L_M = L_N f
/// and f rho^t_M = rho^{perm[t]}_N f for every generator.
std::vector<Matrix> hom_basis(const NFoldBimodule& M, const NFoldBimodule& N, const std::vector<int>& perm);
std::vector<Intertwiner> hom_space(const BimodulePtr& M, const BimodulePtr& N, const std::vector<int>& perm);

/// Slot correspondence sending each slot of M to the slot of N with the same
/// label; throws InvalidArgument when labels do not match up.
std::vector<int> match_labels(const NFoldBimodule& M, const NFoldBimodule& N);

/// An invertible intertwiner, or nullopt when absence is certified. Throws
/// Inconclusive when the hom space is too large to scan.
std::optional<Intertwiner> iso_test(const BimodulePtr& M, const BimodulePtr& N, const std::vector<int>& perm,
                                    const HomOptions& opts = {});

/// Calls f on every combination sum c_i basis_i (coefficient vectors in
/// lexicographic order), stopping when f returns false. Throws
/// BudgetExceeded when q^k exceeds cap.
void for_each_combination(const Field& F, const std::vector<Matrix>& basis, long long cap, const char* stage,
                          const std::function<bool(const Vec& coeffs, const Matrix& m)>& f);

Matrix combine(const Field& F, const std::vector<Matrix>& basis, const Vec& coeffs);

}  // namespace smc

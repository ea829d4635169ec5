#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smc/enumerate.hpp"
#include "smc/structure.hpp"

namespace smc {

/// Invertible 1-fold bimodule X with inverse Y; xy : Q(X (x) Y) -> R and
/// yx : Q(Y (x) X) -> R are bimodule isomorphisms in the canonical bases of
/// the two-leaf expressions [X, Y] and [Y, X].
struct PicardElement {
  BimodulePtr X, Y;
  Matrix xy, yx;
};

/// Empty when both witnesses are invertible intertwiners and the two ways
/// of collapsing X (x) Y (x) X to X agree.
std::vector<std::string> verify_picard(const PicardElement& P);

/// Invertible bimodules of k-dimension at most max_dim up to isomorphism,
/// ordered by (dimension, encoding).
std::vector<PicardElement> picard_enumerate(const AlgebraPtr& R, int max_dim, const EnumOptions& opts = {});

/// Data of a symmetric monoidal equivalence from S (Lambda, K) to T (Gamma, K'):
/// eta : K' -> X (x) K and m : Gamma_{Y,X} (x) X (x) Y -> X (x) Lambda.
struct EquivalenceWitness {
  PicardElement X;
  Matrix eta;
  Matrix m;
};

struct EquivOptions {
  long long budget = 1LL << 20;  // per search over eta or m
};

/// First witness in (X, eta, m) order, or nullopt when none exists among the
/// given Picard elements. Throws Inconclusive when a search exceeds the budget.
std::optional<EquivalenceWitness> equiv_test(const SmcStructure& S, const SmcStructure& T,
                                             const std::vector<PicardElement>& picard, const EquivOptions& opts = {});

/// Empty when eta and m are invertible intertwiners and the unit,
/// commutativity and associativity diagrams commute.
std::vector<std::string> check_witness(const SmcStructure& S, const SmcStructure& T, const EquivalenceWitness& w);

/// True when some X among the Picard elements gives an isomorphism
/// Gamma_{Y,X} (x) X (x) Y = X (x) Lambda of 2-fold bimodules, ignoring units
/// and coherence data: the two structures share an underlying functor shape.
bool same_shape(const SmcStructure& S, const SmcStructure& T, const std::vector<PicardElement>& picard);

struct Partition {
  std::vector<std::vector<int>> classes;  // indices into the input, representative first
  std::vector<int> representative;        // per class
  /// (member, representative) merges with the witness from representative to member
  std::vector<std::pair<int, int>> merges;
  std::vector<EquivalenceWitness> witnesses;
};

/// Representatives are the members with the least canonical key; classes are
/// ordered by representative key. Throws Inconclusive naming the pair.
Partition partition_classes(const std::vector<SmcStructure>& structures, const std::vector<std::string>& keys,
                            const std::vector<PicardElement>& picard, const EquivOptions& opts = {}, int shards = 1);

}  // namespace smc

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "smc/bimodule.hpp"

namespace smc {

/// Sparse vector: (index, nonzero coefficient) pairs in increasing index order.
using SparseVec = std::vector<std::pair<int, Elem>>;

struct Leaf {
  BimodulePtr module;
  std::vector<std::string> labels;  // one per right slot of module
};

/// Right slot `slot` of leaf `from` is tensored against the left action of leaf `to`.
struct Edge {
  int from = 0;
  int slot = 0;
  int to = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Result of collapsing a tree of fold tensors: basis, projection and the
/// surviving actions.
struct Quotient {
  int ambient = 0;
  std::vector<int> section;        // chosen ambient index of each basis element
  std::vector<SparseVec> project;  // ambient index -> coordinates in the basis
  BimodulePtr module;              // the quotient with surviving actions
  std::vector<std::pair<int, int>> provenance;  // (leaf, slot) of each surviving slot
};

/// A tree of fold tensors over k: leaves are bimodules, edges consume one right
/// slot of a leaf against the left action of another. The ambient space is the
/// tensor over k of the leaves (row-major, leaf 0 most significant). The basis
/// of the quotient is the lexicographically first set of ambient basis tensors
/// independent modulo the relations.
class TensorExpr {
 public:
  TensorExpr(std::vector<Leaf> leaves, std::vector<Edge> edges);
  /// Single leaf, no relations.
  explicit TensorExpr(Leaf leaf) : TensorExpr(std::vector<Leaf>{std::move(leaf)}, {}) {}

  const std::vector<Leaf>& leaves() const noexcept { return leaves_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  int root() const noexcept { return root_; }
  int leaf_count() const noexcept { return static_cast<int>(leaves_.size()); }
  int ambient_dim() const noexcept { return q_->ambient; }
  int dim() const noexcept { return static_cast<int>(q_->section.size()); }
  const Quotient& quotient() const noexcept { return *q_; }
  const BimodulePtr& module() const noexcept { return q_->module; }
  /// Labels of the surviving slots, in order.
  const std::vector<std::string>& labels() const { return q_->module->labels(); }

  std::vector<int> decode(int ambient_index) const;
  int encode(const std::vector<int>& digits) const;
  std::vector<int> section_digits(int basis_index) const { return decode(q_->section[basis_index]); }
  const SparseVec& project(int ambient_index) const { return q_->project[ambient_index]; }

 private:
  std::vector<Leaf> leaves_;
  std::vector<Edge> edges_;
  int root_ = 0;
  std::vector<int> radix_;
  std::shared_ptr<const Quotient> q_;
};

/// A piece of an induced map: the leaves `src` of the source (in the order of
/// dom's leaves) are sent by `map` : Q(dom) -> Q(cod) to the leaves `dst` of
/// the target (in the order of cod's leaves).
struct Block {
  std::vector<int> src;
  const TensorExpr* dom = nullptr;
  Matrix map;
  const TensorExpr* cod = nullptr;
  std::vector<int> dst;
};

/// Matrix Q(S) -> Q(T) of the tensor product of the blocks, with `rest`
/// leaves (source leaf, target leaf) carried by the identity.
Matrix induced_map(const TensorExpr& S, const TensorExpr& T, const std::vector<Block>& blocks,
                   const std::vector<std::pair<int, int>>& rest);

/// For E = [R, Y] with edge (0,0 -> 1) and R the regular bimodule: r (x) y -> r.y.
Matrix collapse_left(const TensorExpr& E);
/// For E = [M, R] with edge (0,s -> 1) and R the regular bimodule: m (x) r -> m.r.
Matrix collapse_right(const TensorExpr& E);

/// M (x)_slot N as a two-leaf expression; algebra of the slot must match N's left.
struct TensorSpace {
  TensorExpr expr;
  BimodulePtr result() const { return expr.module(); }
  /// operand (0 = M, 1 = N) and slot of each surviving right action
  const std::vector<std::pair<int, int>>& provenance() const { return expr.quotient().provenance; }
};

TensorSpace tensor_over_R(const BimodulePtr& M, int slot, const BimodulePtr& N);

/// Apply a sparse projection to a dense vector accumulator.
void accumulate(const Field& F, Elem s, const SparseVec& v, Vec& acc);

}  // namespace smc

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "smc/algebra.hpp"

namespace smc {

/// A (left) action or right anti-action of an algebra on k^m, stored on every
/// basis element and on every action generator.
struct Action {
  AlgebraPtr algebra;
  std::vector<Matrix> basis;  // table of each basis element
  std::vector<Matrix> gens;   // table of each action generator
  bool anti = false;          // right action: rho(ab) = rho(b) rho(a)

  friend bool operator==(const Action& a, const Action& b) {
    return a.anti == b.anti && same_ring(*a.algebra, *b.algebra) && a.basis == b.basis;
  }
};

using ActionPtr = std::shared_ptr<const Action>;

/// Builds an action from generator tables, extending to all basis elements
/// through the algebra's word basis. Requires the generators to generate.
ActionPtr action_from_generators(AlgebraPtr R, int m, std::vector<Matrix> gen_tables, bool anti);
/// Builds an action from basis tables.
ActionPtr action_from_basis(AlgebraPtr R, int m, std::vector<Matrix> basis_tables, bool anti);
/// Table of an arbitrary algebra element.
Matrix act(const Field& F, const Action& a, const Vec& element);

/// Left module with n commuting right actions (slots indexed from 0 in code,
/// from 1 in files and messages). Column convention: L(a)v and v.a = rho(a)v.
class NFoldBimodule {
 public:
  NFoldBimodule(int dim, ActionPtr left, std::vector<ActionPtr> rights, std::vector<std::string> labels = {});

  int dim() const noexcept { return dim_; }
  int fold() const noexcept { return static_cast<int>(rights_.size()); }
  const Field& field() const noexcept { return left_->algebra->field(); }
  const AlgebraPtr& algebra() const noexcept { return left_->algebra; }
  const Action& left() const noexcept { return *left_; }
  const Action& right(int t) const { return *rights_.at(t); }
  const ActionPtr& left_ptr() const noexcept { return left_; }
  const ActionPtr& right_ptr(int t) const { return rights_.at(t); }
  const std::vector<ActionPtr>& rights() const noexcept { return rights_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Generator tables of all actions concatenated, left first: the canonical
  /// encoding used for ordering representatives.
  std::vector<Elem> encode() const;

  friend bool operator==(const NFoldBimodule& a, const NFoldBimodule& b);

 private:
  int dim_;
  ActionPtr left_;
  std::vector<ActionPtr> rights_;
  std::vector<std::string> labels_;
};

using BimodulePtr = std::shared_ptr<const NFoldBimodule>;

/// Linear map between bimodules of equal fold; domain slot t matches
/// codomain slot perm[t].
struct Intertwiner {
  BimodulePtr dom, cod;
  std::vector<int> perm;
  Matrix map;
};

/// Empty iff every bimodule axiom holds; messages name the axiom and witnesses.
std::vector<std::string> validate_bimodule(const NFoldBimodule& M);
/// New slot i is old slot sigma[i]; tables are shared.
BimodulePtr permute_actions(const BimodulePtr& M, const std::vector<int>& sigma);
/// Replace slot labels (tables shared).
BimodulePtr relabel(const BimodulePtr& M, std::vector<std::string> labels);

/// R acting on itself on the left, and by right multiplication in n slots.
BimodulePtr regular_bimodule(const AlgebraPtr& R, int n, std::vector<std::string> labels = {});
/// Fold-0 module from generator tables.
BimodulePtr left_module(const AlgebraPtr& R, int m, std::vector<Matrix> gen_tables);
/// Zero-dimensional module of the given fold.
BimodulePtr zero_bimodule(const AlgebraPtr& R, int n);
/// Direct sum of two bimodules of equal fold over the same actions' algebras.
BimodulePtr direct_sum(const NFoldBimodule& A, const NFoldBimodule& B);
/// Checks that f intertwines every action; empty when it does.
std::vector<std::string> check_intertwiner(const Intertwiner& f);
bool is_invertible(const Intertwiner& f);

std::vector<int> identity_perm(int n);
std::vector<int> compose_perm(const std::vector<int>& s, const std::vector<int>& t);

}  // namespace smc

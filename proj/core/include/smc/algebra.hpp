#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smc/field.hpp"
#include "smc/matrix.hpp"

namespace smc {

/// A word in the generators, read left to right as a product.
using Word = std::vector<int>;

struct Term {
  Elem coeff = 1;
  Word word;  // empty word is the unit
  friend bool operator==(const Term&, const Term&) = default;
};

/// Noncommutative polynomial in the generators; a relation asserts it is zero.
using Relation = std::vector<Term>;

struct Presentation {
  std::vector<Vec> generators;      // coordinate vectors in the algebra
  std::vector<std::string> names;   // display names, one per generator
  std::vector<Relation> relations;
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Finite-dimensional unital associative algebra given by structure constants.
class Algebra {
 public:
  /// mul[i][j] holds the coordinates of e_i * e_j. The constructor does not
  /// validate axioms; call verify().
  Algebra(FieldPtr field, std::vector<std::vector<Vec>> mul, Vec unit, std::vector<std::string> names,
          std::optional<Presentation> presentation = std::nullopt, std::string label = {});

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  int dim() const noexcept { return dim_; }
  const Vec& unit() const noexcept { return unit_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& label() const noexcept { return label_; }
  const Vec& product(int i, int j) const { return mul_[i][j]; }
  const std::vector<std::vector<Vec>>& table() const noexcept { return mul_; }

  bool has_presentation() const noexcept { return presentation_.has_value(); }
  const std::optional<Presentation>& presentation() const noexcept { return presentation_; }

  /// Generators used for intertwining constraints: the presentation
  /// generators when present, otherwise every basis vector.
  const std::vector<Vec>& action_generators() const noexcept { return action_gens_; }

  /// Words in the action generators whose values form a basis (BFS order,
  /// starting at the empty word), and the matrix whose column i gives e_i in
  /// that word basis.
  const std::vector<Word>& basis_words() const noexcept { return basis_words_; }
  const Matrix& basis_in_words() const noexcept { return basis_in_words_; }

  /// A complete defining relation set for the action generators: g*w equals
  /// its expansion in basis words, for every generator g and basis word w.
  /// Trivial identities are omitted.
  const std::vector<Relation>& defining_relations() const noexcept { return defining_; }

  Vec multiply(const Vec& a, const Vec& b) const;
  Vec basis_vector(int i) const;
  Vec eval_word(const Word& w) const;
  Vec eval(const Relation& r) const;

  /// Column j is a*e_j (left) or e_j*a (right).
  const Matrix& left_regular(int i) const { return left_reg_[i]; }
  const Matrix& right_regular(int i) const { return right_reg_[i]; }
  Matrix left_mult(const Vec& a) const;
  Matrix right_mult(const Vec& a) const;

  bool is_commutative() const;
  /// Associativity, unit, relation and generation diagnostics; empty when valid.
  std::vector<std::string> verify() const;

  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  void derive_words();

  FieldPtr field_;
  int dim_;
  std::vector<std::vector<Vec>> mul_;
  Vec unit_;
  std::vector<std::string> names_;
  std::optional<Presentation> presentation_;
  std::string label_;
  std::vector<Vec> action_gens_;
  std::vector<Word> basis_words_;
  Matrix basis_in_words_;
  std::vector<Relation> defining_;
  std::vector<Matrix> left_reg_, right_reg_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Same dimension, field and multiplication table (names and presentation ignored).
bool same_ring(const Algebra& a, const Algebra& b);

inline constexpr int kDefaultMaxAlgebraOrder = 64;

/// k[Z/n1 x Z/n2 x ...]; element index is mixed radix with the first factor
/// least significant.
AlgebraPtr make_group_algebra(FieldPtr k, const std::vector<int>& cyclic_orders,
                              int max_group_order = kDefaultMaxAlgebraOrder);
/// k[x]/(f) for monic f given by coefficients, low degree first.
AlgebraPtr make_quotient_algebra(FieldPtr k, const std::vector<Elem>& monic);
/// M_n(k) with basis E_ij at index i*n + j.
AlgebraPtr make_matrix_algebra(FieldPtr k, int n, int max_dim = kDefaultMaxAlgebraOrder);
/// k as a one-dimensional algebra with no generators.
AlgebraPtr make_field_algebra(FieldPtr k);

struct CenterReport {
  Matrix center;                  // columns form a basis of Z(R)
  std::vector<Vec> idempotents;   // central idempotents, lexicographic order
  std::vector<Vec> units;         // units of R when |R| <= scan cap
  bool units_listed = false;
  bool idempotents_partial = false;
};

inline constexpr long long kRingScanCap = 4096;

CenterReport analyze_ring(const Algebra& R, long long scan_cap = kRingScanCap);

/// Enumerate all vectors of F^n in lexicographic code order (last coordinate
/// fastest) and call f on each; stops early when f returns false.
template <class Fn>
void for_each_vector(int q, int n, Fn&& f) {
  Vec v(n, 0);
  while (true) {
    if (!f(static_cast<const Vec&>(v))) return;
    int i = n - 1;
    for (; i >= 0; --i) {
      if (v[i] + 1 < q) {
        ++v[i];
        break;
      }
      v[i] = 0;
    }
    if (i < 0) return;
  }
}

/// q^n as a double, for budget comparisons.
double space_size(int q, double n);

}  // namespace smc

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace smc {

/// Field elements are dense codes 0..q-1. For q = p^e the code of
/// c0 + c1*t + ... + c_{e-1}*t^{e-1} is c0 + c1*p + ... (base-p digits).
using Elem = std::uint8_t;

/// Finite field F_{p^e} with precomputed operation tables.
///
/// The defining polynomial is the lexicographically least monic irreducible of
/// degree e, ordering candidates by the code of their lower coefficients.
class Field {
 public:
  static constexpr int kDefaultMaxOrder = 64;
  static constexpr int kHardMaxOrder = 256;

  /// Throws InvalidArgument for non-prime p, e < 1, or p^e above max_order.
  static std::shared_ptr<const Field> make(int p, int e = 1, int max_order = kDefaultMaxOrder);

  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return e_; }
  int order() const noexcept { return q_; }

  Elem add(Elem a, Elem b) const noexcept { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const noexcept { return add_[a * q_ + neg_[b]]; }
  Elem neg(Elem a) const noexcept { return neg_[a]; }
  Elem mul(Elem a, Elem b) const noexcept { return mul_[a * q_ + b]; }
  /// Multiplicative inverse; throws InvalidArgument on zero.
  Elem inv(Elem a) const;
  Elem pow(Elem a, long long n) const;
  /// Image of an integer in the prime subfield.
  Elem from_int(long long n) const noexcept;
  /// Least generator of the multiplicative group.
  Elem primitive() const noexcept { return primitive_; }

  /// Coefficients of the defining polynomial, low degree first, leading 1 included.
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  /// Exhaustive axiom check (empty when all axioms hold).
  std::vector<std::string> verify() const;

  std::string name() const;
  bool operator==(const Field& o) const noexcept { return p_ == o.p_ && e_ == o.e_; }

 private:
  Field() = default;
  int p_ = 0, e_ = 0, q_ = 0;
  Elem primitive_ = 1;
  std::vector<int> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(int n);

}  // namespace smc

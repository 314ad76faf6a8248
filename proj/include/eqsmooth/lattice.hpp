#pragma once

// Intersection forms of simply connected 4-manifolds as integer lattices.

#include "eqsmooth/numeric.hpp"

#include <cstddef>

namespace eqs {

/// A symmetric integer Gram matrix.  Degenerate forms are allowed; their
/// radical shows up as b_zero in the signature profile.
class IntegerLattice {
 public:
  IntegerLattice() = default;

  /// Throws Error(malformed_input) unless `gram` is square and symmetric.
  explicit IntegerLattice(IntMatrix gram);

  const IntMatrix& gram() const noexcept { return gram_; }
  std::size_t rank() const noexcept { return gram_.rows(); }

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
    return a.gram_ == b.gram_;
  }

 private:
  IntMatrix gram_;
};

struct SignatureProfile {
  std::size_t b_plus = 0;
  std::size_t b_minus = 0;
  std::size_t b_zero = 0;

  long long signature() const {
    return static_cast<long long>(b_plus) - static_cast<long long>(b_minus);
  }
  std::size_t rank() const { return b_plus + b_minus + b_zero; }

  friend bool operator==(const SignatureProfile&, const SignatureProfile&) = default;
};

enum class StandardForm { hyperbolic, s2xs2, minus_e8, k3 };

IntegerLattice make_standard(StandardForm kind);

IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b);

/// Exact symmetric congruence diagonalization over Q.  When every remaining
/// diagonal entry vanishes but an off-diagonal one does not, row/column j is
/// added into i to manufacture a pivot 2*g(i,j).
SignatureProfile signature_profile(const IntegerLattice& l);

/// Overload for a raw matrix; throws Error(malformed_input) if it is not
/// symmetric.
SignatureProfile signature_profile(const IntMatrix& gram);

bool is_even(const IntegerLattice& l);

}  // namespace eqs

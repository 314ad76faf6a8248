#pragma once

// Parity of spin involutions from their fixed sets, and the equivariant
// Dirac index arithmetic feeding the obstruction bounds.

#include "eqsmooth/numeric.hpp"
#include "eqsmooth/scenario.hpp"

namespace eqs {

enum class Parity { odd, even };

std::string to_string(Parity p);

struct ParityResult {
  Parity parity = Parity::odd;
  /// Both 0- and 2-dimensional components were present; the 2-dimensional
  /// rule won.
  bool mixed_dimensions = false;
};

/// A 2-dimensional fixed component forces odd; a purely 0-dimensional
/// fixed set means even.  An empty fixed set throws Error(out_of_scope):
/// parity of a free involution is not decided by this rule.
ParityResult classify_parity(const FixedSetData& f);

/// Lefschetz formula for isolated fixed points: (n_plus - n_minus) / 2.
Rational lefschetz_index(long long n_plus, long long n_minus);

/// Real index of the Dirac operator, -signature / 4.  Throws
/// Error(out_of_scope) for positive signature.
Rational real_index_from_signature(long long signature);

/// Bound for a single odd involution: -signature / 16.  May be
/// non-integral for custom inputs; callers check is_integral().
Rational k_odd(long long signature);

/// Bound for two commuting odd involutions with even composition, for one
/// choice of lift sign: (-signature/4 + index_twisted) / 8.
Rational k_klein(long long signature, const Rational& index_twisted);

/// Both lift signs, larger value: -signature/32 + |index_twisted| / 8.
Rational k_klein_best(long long signature, const Rational& index_twisted);

}  // namespace eqs

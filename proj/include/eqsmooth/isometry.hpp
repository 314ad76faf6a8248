#pragma once

// Integer isometries I = -iota^* of a lattice and their joint invariant
// sublattices.

#include "eqsmooth/lattice.hpp"

#include <span>

namespace eqs {

/// An integer matrix acting on the coordinates of `lattice`.  Operators are
/// always stored in the sign-twisted convention I = -iota^*.
struct LatticeIsometry {
  IntMatrix matrix;
  IntegerLattice lattice;
};

struct InvariantSublattice {
  /// Columns form a primitive basis of the joint fixed sublattice.
  IntMatrix basis;
  IntMatrix restricted_gram;

  std::size_t rank() const noexcept { return basis.cols(); }
};

/// True iff M^T G M = G.  Throws Error(malformed_input) on a shape mismatch.
bool verify_isometry(const LatticeIsometry& op);

/// True iff the two matrices commute.  Throws if the ambient lattices differ.
bool commute(const LatticeIsometry& a, const LatticeIsometry& b);

bool is_involutive(const LatticeIsometry& op);

/// Primitive basis of the intersection of ker(M_i - Id), computed by
/// unimodular column reduction of the stacked matrices, followed by Hermite
/// normalisation of the basis.
InvariantSublattice invariant_sublattice(std::span<const LatticeIsometry> ops);

/// b_plus of the form restricted to the joint invariant sublattice.
std::size_t b_plus_invariant(std::span<const LatticeIsometry> ops);

/// Unimodular column reduction: returns a basis of the integer kernel
/// {x in Z^n : A x = 0} as matrix columns.  The basis is saturated.
IntMatrix integer_kernel(const IntMatrix& a);

}  // namespace eqs

#include "eqsmooth/isometry.hpp"

#include <utility>
#include <vector>

namespace eqs {

namespace {

struct Bezout {
  Integer g, x, y;  // x*a + y*b = g >= 0
};

Bezout extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// Replaces columns (p, c) of m by (x*p + y*c, u*p + v*c).
void mix_columns(IntMatrix& m, std::size_t p, std::size_t c, const Integer& x,
                 const Integer& y, const Integer& u, const Integer& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer vp = m(r, p), vc = m(r, c);
    m(r, p) = x * vp + y * vc;
    m(r, c) = u * vp + v * vc;
  }
}

void add_column_multiple(IntMatrix& m, std::size_t dst, std::size_t src,
                         const Integer& factor) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += factor * m(r, src);
}

void negate_column(IntMatrix& m, std::size_t c) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = -m(r, c);
}

// Floor division for a positive divisor.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

// Column echelon form by unimodular column operations, mirrored into
// `track` when given.  Returns the pivot rows; pivot i sits in column i.
std::vector<std::size_t> column_echelon(IntMatrix& w, IntMatrix* track) {
  std::vector<std::size_t> pivot_rows;
  std::size_t p = 0;
  for (std::size_t r = 0; r < w.rows() && p < w.cols(); ++r) {
    for (std::size_t c = p + 1; c < w.cols(); ++c) {
      if (w(r, c) == 0) continue;
      const Integer a = w(r, p), b = w(r, c);
      const Bezout bz = extended_gcd(a, b);
      const Integer u = -b / bz.g, v = a / bz.g;
      mix_columns(w, p, c, bz.x, bz.y, u, v);
      if (track) mix_columns(*track, p, c, bz.x, bz.y, u, v);
    }
    if (w(r, p) == 0) continue;
    if (w(r, p) < 0) {
      negate_column(w, p);
      if (track) negate_column(*track, p);
    }
    // Reduce earlier columns modulo the new pivot.
    for (std::size_t j = 0; j < p; ++j) {
      const Integer q = floor_div(w(r, j), w(r, p));
      if (q == 0) continue;
      add_column_multiple(w, j, p, -q);
      if (track) add_column_multiple(*track, j, p, -q);
    }
    pivot_rows.push_back(r);
    ++p;
  }
  return pivot_rows;
}

const IntegerLattice& common_lattice(std::span<const LatticeIsometry> ops) {
  if (ops.empty()) {
    throw Error(Error::Code::malformed_input, "operator list is empty");
  }
  for (const auto& op : ops) {
    if (!(op.lattice == ops.front().lattice)) {
      throw Error(Error::Code::malformed_input,
                  "operators act on different ambient lattices");
    }
  }
  return ops.front().lattice;
}

}  // namespace

bool verify_isometry(const LatticeIsometry& op) {
  const std::size_t n = op.lattice.rank();
  if (op.matrix.rows() != n || op.matrix.cols() != n) {
    throw Error(Error::Code::malformed_input,
                "malformed operator: matrix size does not match lattice rank");
  }
  return op.matrix.transpose() * op.lattice.gram() * op.matrix ==
         op.lattice.gram();
}

bool commute(const LatticeIsometry& a, const LatticeIsometry& b) {
  if (!(a.lattice == b.lattice)) {
    throw Error(Error::Code::malformed_input,
                "operators act on different ambient lattices");
  }
  return a.matrix * b.matrix == b.matrix * a.matrix;
}

bool is_involutive(const LatticeIsometry& op) {
  return op.matrix * op.matrix == IntMatrix::identity(op.matrix.rows());
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const std::size_t n = a.cols();
  IntMatrix w = a;
  IntMatrix u = IntMatrix::identity(n);
  const std::size_t pivots = column_echelon(w, &u).size();

  IntMatrix kernel(n, n - pivots);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = pivots; c < n; ++c) kernel(r, c - pivots) = u(r, c);

  // Canonical (Hermite) basis of the same lattice.
  column_echelon(kernel, nullptr);
  return kernel;
}

InvariantSublattice invariant_sublattice(std::span<const LatticeIsometry> ops) {
  const IntegerLattice& lattice = common_lattice(ops);
  const std::size_t n = lattice.rank();
  for (const auto& op : ops) {
    if (!verify_isometry(op)) {
      throw Error(Error::Code::malformed_input,
                  "operator does not preserve the intersection form");
    }
  }

  IntMatrix stacked(ops.size() * n, n);
  const IntMatrix id = IntMatrix::identity(n);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const IntMatrix shifted = ops[k].matrix - id;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) stacked(k * n + r, c) = shifted(r, c);
  }

  InvariantSublattice out;
  out.basis = integer_kernel(stacked);
  out.restricted_gram = out.basis.transpose() * lattice.gram() * out.basis;
  return out;
}

std::size_t b_plus_invariant(std::span<const LatticeIsometry> ops) {
  return signature_profile(invariant_sublattice(ops).restricted_gram).b_plus;
}

}  // namespace eqs

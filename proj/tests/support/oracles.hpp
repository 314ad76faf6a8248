#pragma once

// Test-only oracles.  Nothing here shares code with the library's
// elimination routines: ranks and nullspaces use plain rational RREF,
// signatures use floating eigenvalues, saturation uses Smith form.

#include "eqsmooth/lattice.hpp"
#include "eqsmooth/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using eqs::Integer;
using eqs::IntMatrix;
using eqs::Rational;
using eqs::RatMatrix;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(row, c), a(p, c));
    const Rational inv = 1 / a(row, col);
    for (std::size_t c = 0; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

inline std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

/// Basis of {x in Q^n : A x = 0}, one column per free variable.
inline RatMatrix nullspace(const IntMatrix& m) {
  RatMatrix a = to_rational(m);
  const auto pivots = rref(a);
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.push_back(c);
  RatMatrix basis(a.cols(), free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    basis(free[j], j) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], j) = -a(i, free[j]);
  }
  return basis;
}

inline RatMatrix hconcat(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

/// Column spaces agree over Q.
inline bool same_span(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) return false;
  const std::size_t ra = rank(a), rb = rank(b);
  return ra == rb && rank(hconcat(a, b)) == ra;
}

/// Diagonal of the Smith normal form (nonzero entries only).
inline std::vector<Integer> smith_invariant_factors(IntMatrix a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<Integer> out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block as pivot.
    bool found = false;
    std::size_t pr = t, pc = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(pr, pc)))) {
          found = true;
          pr = i;
          pc = j;
        }
    if (!found) break;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(t, j), a(pr, j));
    for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, t), a(i, pc));

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const Integer q = a(i, t) / a(t, t);
        for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const Integer q = a(t, j) / a(t, t);
        for (std::size_t i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (clean) {
        // Divisibility condition: pivot must divide the trailing block.
        std::size_t bi = 0, bj = 0;
        bool bad = false;
        for (std::size_t i = t + 1; i < rows && !bad; ++i)
          for (std::size_t j = t + 1; j < cols && !bad; ++j)
            if (a(i, j) % a(t, t) != 0) {
              bad = true;
              bi = i;
              bj = j;
            }
        if (!bad) break;
        (void)bj;
        for (std::size_t j = t; j < cols; ++j) a(t, j) += a(bi, j);
        continue;
      }
      // Move the smallest nonzero entry of row/column t onto the pivot.
      std::size_t br = t, bc = t;
      for (std::size_t i = t; i < rows; ++i)
        if (a(i, t) != 0 && abs(a(i, t)) < abs(a(br, bc))) {
          br = i;
          bc = t;
        }
      for (std::size_t j = t; j < cols; ++j)
        if (a(t, j) != 0 && abs(a(t, j)) < abs(a(br, bc))) {
          br = t;
          bc = j;
        }
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(t, j), a(br, j));
      for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, t), a(i, bc));
    }
    out.push_back(abs(a(t, t)));
  }
  return out;
}

inline bool saturated(const IntMatrix& basis) {
  const auto f = smith_invariant_factors(basis);
  return f.size() == basis.cols() &&
         std::all_of(f.begin(), f.end(), [](const Integer& d) { return d == 1; });
}

/// (b_plus, b_minus, b_zero) from floating eigenvalues.  The number of zero
/// eigenvalues is n - rank (exact); the remaining eigenvalues are the ones
/// of largest magnitude, counted by sign.
inline eqs::SignatureProfile eigen_signature(const IntMatrix& g) {
  const std::size_t n = g.rows();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<double>(g(i, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), [](double a, double b) { return std::fabs(a) < std::fabs(b); });
  eqs::SignatureProfile p;
  p.b_zero = n - rank(g);
  for (std::size_t i = p.b_zero; i < n; ++i) (ev[i] > 0 ? p.b_plus : p.b_minus)++;
  return p;
}

inline IntMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = d(rng);
  return g;
}

/// Random U in GL_n(Z) built from elementary column operations, with its
/// inverse tracked alongside.
inline std::pair<IntMatrix, IntMatrix> random_unimodular(std::mt19937_64& rng, std::size_t n,
                                                         int steps) {
  IntMatrix u = IntMatrix::identity(n), inv = IntMatrix::identity(n);
  if (n == 0) return {u, inv};
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2), kind(0, 3);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = idx(rng), j = idx(rng);
    switch (kind(rng)) {
      case 0:
        if (i == j) break;
        // col_i += c col_j on U; row_j -= c row_i on U^-1.
        {
          const int c = coef(rng);
          for (std::size_t r = 0; r < n; ++r) u(r, i) += c * u(r, j);
          for (std::size_t r = 0; r < n; ++r) inv(j, r) -= c * inv(i, r);
        }
        break;
      case 1:
        for (std::size_t r = 0; r < n; ++r) std::swap(u(r, i), u(r, j));
        for (std::size_t r = 0; r < n; ++r) std::swap(inv(i, r), inv(j, r));
        break;
      case 2:
        for (std::size_t r = 0; r < n; ++r) u(r, i) = -u(r, i);
        for (std::size_t r = 0; r < n; ++r) inv(i, r) = -inv(i, r);
        break;
      default:
        if (i == j) break;
        for (std::size_t r = 0; r < n; ++r) u(r, i) += u(r, j);
        for (std::size_t r = 0; r < n; ++r) inv(j, r) -= inv(i, r);
        break;
    }
  }
  return {u, inv};
}

struct InvolutionSample {
  IntMatrix gram;
  IntMatrix op;
};

/// Block involution: swapped pairs A + A, +-Id on a block, or a reflection
/// in a vector of square +-1 or +-2.  Afterwards conjugated by a random
/// unimodular matrix so the operator is no longer a signed permutation.
inline InvolutionSample random_involution(std::mt19937_64& rng, std::size_t max_rank) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::vector<IntMatrix> grams, ops;
  std::size_t used = 0;
  while (used < max_rank) {
    const std::size_t room = max_rank - used;
    std::uniform_int_distribution<std::size_t> sz(1, std::min<std::size_t>(room, 4));
    const int kd = kind(rng);
    if (kd == 0 && room >= 2) {
      const std::size_t half = std::min<std::size_t>(room / 2, 1 + sz(rng) % 3);
      const IntMatrix a = random_symmetric(rng, half, 3);
      grams.push_back(eqs::block_diagonal(a, a));
      IntMatrix p(2 * half, 2 * half);
      for (std::size_t i = 0; i < half; ++i) p(i, half + i) = p(half + i, i) = 1;
      ops.push_back(p);
      used += 2 * half;
    } else if (kd == 1 || kd == 0) {
      const std::size_t n = sz(rng);
      grams.push_back(random_symmetric(rng, n, 3));
      IntMatrix id = IntMatrix::identity(n);
      ops.push_back(rng() % 2 ? id : -id);
      used += n;
    } else {
      const std::size_t n = sz(rng);
      bool done = false;
      for (int attempt = 0; attempt < 200 && !done; ++attempt) {
        const IntMatrix g = random_symmetric(rng, n, 2);
        std::uniform_int_distribution<int> d(-1, 1);
        IntMatrix v(n, 1);
        for (std::size_t i = 0; i < n; ++i) v(i, 0) = d(rng);
        const Integer q = (v.transpose() * g * v)(0, 0);
        if (q != 1 && q != -1 && q != 2 && q != -2) continue;
        // R = Id - (2/q) v v^T G; integral because q divides 2.
        const Integer c = 2 / q;
        IntMatrix r = IntMatrix::identity(n);
        const IntMatrix vvg = v * v.transpose() * g;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) r(i, j) -= c * vvg(i, j);
        grams.push_back(g);
        ops.push_back(r);
        done = true;
      }
      if (!done) {
        grams.push_back(random_symmetric(rng, n, 3));
        ops.push_back(-IntMatrix::identity(n));
      }
      used += n;
    }
  }
  IntMatrix g = grams[0], m = ops[0];
  for (std::size_t i = 1; i < grams.size(); ++i) {
    g = eqs::block_diagonal(g, grams[i]);
    m = eqs::block_diagonal(m, ops[i]);
  }
  const auto [u, uinv] = random_unimodular(rng, g.rows(), 3 * static_cast<int>(g.rows()));
  return {u.transpose() * g * u, uinv * m * u};
}

}  // namespace oracle

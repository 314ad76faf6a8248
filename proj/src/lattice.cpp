#include "eqsmooth/lattice.hpp"

#include <array>
#include <utility>

namespace eqs {

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& q) {
  if (is_integral(q)) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

namespace {

bool symmetric(const IntMatrix& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

IntMatrix minus_e8_gram() {
  // Dynkin diagram: chain 0-1-2-3-4-5-6 with node 7 hanging off node 4,
  // giving arms of length 4, 2 and 1 from the trivalent node.
  constexpr std::array<std::pair<int, int>, 7> edges{
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}}};
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
  for (auto [a, b] : edges) {
    g(a, b) = 1;
    g(b, a) = 1;
  }
  return g;
}

}  // namespace

IntegerLattice::IntegerLattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (!symmetric(gram_)) {
    throw Error(Error::Code::malformed_input,
                "malformed lattice: Gram matrix is not square and symmetric");
  }
}

IntegerLattice make_standard(StandardForm kind) {
  switch (kind) {
    case StandardForm::hyperbolic:
    case StandardForm::s2xs2:
      return IntegerLattice(IntMatrix{{0, 1}, {1, 0}});
    case StandardForm::minus_e8:
      return IntegerLattice(minus_e8_gram());
    case StandardForm::k3: {
      IntegerLattice h = make_standard(StandardForm::hyperbolic);
      IntegerLattice e = make_standard(StandardForm::minus_e8);
      return direct_sum(direct_sum(direct_sum(h, h), h), direct_sum(e, e));
    }
  }
  throw Error(Error::Code::internal, "unknown standard form");
}

IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b) {
  return IntegerLattice(block_diagonal(a.gram(), b.gram()));
}

SignatureProfile signature_profile(const IntegerLattice& l) {
  const std::size_t n = l.rank();
  RatMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(l.gram()(i, j));

  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
  };

  SignatureProfile profile;
  std::size_t step = 0;
  for (; step < n; ++step) {
    std::size_t pivot = n;
    for (std::size_t i = step; i < n; ++i) {
      if (a(i, i) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) {
      // Pivot repair: x_i <- x_i + x_j turns a(i,i) into 2 a(i,j).
      std::size_t pi = n, pj = n;
      for (std::size_t i = step; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;  // the remaining block is identically zero
      for (std::size_t c = 0; c < n; ++c) a(pi, c) += a(pj, c);
      for (std::size_t r = 0; r < n; ++r) a(r, pi) += a(r, pj);
      pivot = pi;
    }
    swap_index(step, pivot);

    const Rational p = a(step, step);
    (p > 0 ? profile.b_plus : profile.b_minus)++;
    for (std::size_t r = step + 1; r < n; ++r) {
      if (a(r, step) == 0) continue;
      const Rational f = a(r, step) / p;
      // The matching column operation only clears a(step, r); the trailing
      // block it would touch is already symmetric after the row pass.
      for (std::size_t c = step; c < n; ++c) a(r, c) -= f * a(step, c);
    }
    for (std::size_t c = step + 1; c < n; ++c) a(step, c) = 0;
  }
  profile.b_zero = n - profile.b_plus - profile.b_minus;
  return profile;
}

SignatureProfile signature_profile(const IntMatrix& gram) {
  return signature_profile(IntegerLattice(gram));
}

bool is_even(const IntegerLattice& l) {
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (boost::multiprecision::abs(l.gram()(i, i)) % 2 != 0) return false;
  return true;
}

}  // namespace eqs

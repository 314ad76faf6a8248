#pragma once

// The representation ring R(Z/4) and the character computations behind the
// 2^(b-k) integrality argument.
//
// Irreducible characters are t^a for a = 0..3, where t sends the generator
// to i.  C_a denotes the line on which the generator acts by i^a; the real
// sign representation only enters through its complexification C_2.

#include "eqsmooth/numeric.hpp"

#include <array>
#include <cstdint>
#include <utility>

namespace eqs {

/// Exact element of Z[i].
struct GaussianInt {
  Integer re = 0;
  Integer im = 0;

  friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
};

/// Exact element of Q(i).
struct GaussianRational {
  Rational re = 0;
  Rational im = 0;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(const GaussianInt& z) : re(z.re), im(z.im) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  /// Lies in Z[i], i.e. is an algebraic integer of Q(i).
  bool is_gaussian_integer() const { return is_integral(re) && is_integral(im); }

  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  /// Throws Error(out_of_scope) on division by zero.
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

std::string to_string(const GaussianRational& z);

/// Virtual representation sum_a mult[a] * C_a; multiplicities may be negative.
class VirtualRepZ4 {
 public:
  VirtualRepZ4() = default;
  explicit VirtualRepZ4(std::array<std::int64_t, 4> mult) : mult_(mult) {}

  /// The line C_a, a taken mod 4 (so C_{-1} = C_3).
  static VirtualRepZ4 line(int a);
  static VirtualRepZ4 unit() { return line(0); }

  const std::array<std::int64_t, 4>& mult() const noexcept { return mult_; }
  std::int64_t dimension() const;

  friend VirtualRepZ4 operator+(const VirtualRepZ4& a, const VirtualRepZ4& b);
  friend VirtualRepZ4 operator-(const VirtualRepZ4& a, const VirtualRepZ4& b);
  /// Tensor product: cyclic convolution of multiplicities.
  friend VirtualRepZ4 operator*(const VirtualRepZ4& a, const VirtualRepZ4& b);
  /// n-fold direct sum.
  friend VirtualRepZ4 operator*(std::int64_t n, const VirtualRepZ4& r);
  friend bool operator==(const VirtualRepZ4&, const VirtualRepZ4&) = default;

 private:
  std::array<std::int64_t, 4> mult_{};
};

/// i^e for any integer exponent.
GaussianInt power_of_i(std::int64_t e);

/// sum_c mult[c] * i^(a*c).
GaussianInt character_value(const VirtualRepZ4& r, int element);

/// tr_g(lambda_{-1}(A - B)) = prod over lines of A of (1 - chi(g)) divided by
/// the same product over B.  Lines are read off net multiplicities.  A
/// g-fixed line in the denominator throws Error(out_of_scope).
GaussianRational lambda_minus_one_trace(const VirtualRepZ4& r, int element);

/// d(f_g) * tr_g(lambda_{-1}(W_perp - V_perp)).
GaussianRational tomdieck_trace(const Integer& fixed_degree, const VirtualRepZ4& w_perp,
                                const VirtualRepZ4& v_perp, int element);

struct TraceIntegrality {
  Rational value;  // 2^(b-k)
  bool is_algebraic_integer = false;
};

/// 2^(b-k) in closed form.  A rational number is an algebraic integer iff
/// it is an integer, so the flag is b >= k.
TraceIntegrality bk_trace_and_integrality(std::int64_t b, std::int64_t k);

struct RepSpaces {
  VirtualRepZ4 v;  // C_2^m + (C_1 + C_{-1})^(n+k)
  VirtualRepZ4 w;  // C_2^(m+b) + (C_1 + C_{-1})^n
};

/// Complexified source and target of the finite-dimensional approximation.
RepSpaces rep_spaces_from_data(std::int64_t m, std::int64_t n, std::int64_t b, std::int64_t k);

}  // namespace eqs

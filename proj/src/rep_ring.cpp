#include "eqsmooth/rep_ring.hpp"

namespace eqs {

namespace {

int mod4(std::int64_t x) { return static_cast<int>(((x % 4) + 4) % 4); }

GaussianRational pow(const GaussianRational& base, std::int64_t e) {
  GaussianRational out(1);
  for (std::int64_t i = 0; i < e; ++i) out = out * base;
  return out;
}

}  // namespace

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const Rational norm = b.re * b.re + b.im * b.im;
  if (norm == 0) throw Error(Error::Code::out_of_scope, "division by zero in Q(i)");
  return {(a.re * b.re + a.im * b.im) / norm, (a.im * b.re - a.re * b.im) / norm};
}

std::string to_string(const GaussianRational& z) {
  if (z.im == 0) return to_string(z.re);
  const Rational mag = z.im < 0 ? Rational(-z.im) : z.im;
  const std::string imag = (mag == 1 ? std::string() : to_string(mag)) + "i";
  if (z.re == 0) return (z.im < 0 ? "-" : "") + imag;
  return to_string(z.re) + (z.im < 0 ? " - " : " + ") + imag;
}

VirtualRepZ4 VirtualRepZ4::line(int a) {
  std::array<std::int64_t, 4> m{};
  m[mod4(a)] = 1;
  return VirtualRepZ4(m);
}

std::int64_t VirtualRepZ4::dimension() const {
  return mult_[0] + mult_[1] + mult_[2] + mult_[3];
}

VirtualRepZ4 operator+(const VirtualRepZ4& a, const VirtualRepZ4& b) {
  std::array<std::int64_t, 4> m{};
  for (int c = 0; c < 4; ++c) m[c] = a.mult_[c] + b.mult_[c];
  return VirtualRepZ4(m);
}

VirtualRepZ4 operator-(const VirtualRepZ4& a, const VirtualRepZ4& b) {
  std::array<std::int64_t, 4> m{};
  for (int c = 0; c < 4; ++c) m[c] = a.mult_[c] - b.mult_[c];
  return VirtualRepZ4(m);
}

VirtualRepZ4 operator*(const VirtualRepZ4& a, const VirtualRepZ4& b) {
  std::array<std::int64_t, 4> m{};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) m[(x + y) % 4] += a.mult_[x] * b.mult_[y];
  return VirtualRepZ4(m);
}

VirtualRepZ4 operator*(std::int64_t n, const VirtualRepZ4& r) {
  std::array<std::int64_t, 4> m{};
  for (int c = 0; c < 4; ++c) m[c] = n * r.mult_[c];
  return VirtualRepZ4(m);
}

GaussianInt power_of_i(std::int64_t e) {
  switch (mod4(e)) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

GaussianInt character_value(const VirtualRepZ4& r, int element) {
  GaussianInt sum;
  for (int c = 0; c < 4; ++c) {
    const GaussianInt chi = power_of_i(static_cast<std::int64_t>(element) * c);
    sum = sum + GaussianInt{Integer(r.mult()[c]), 0} * chi;
  }
  return sum;
}

GaussianRational lambda_minus_one_trace(const VirtualRepZ4& r, int element) {
  GaussianRational numerator(1), denominator(1);
  for (int c = 0; c < 4; ++c) {
    const std::int64_t m = r.mult()[c];
    if (m == 0) continue;
    const GaussianInt chi = power_of_i(static_cast<std::int64_t>(element) * c);
    const GaussianRational factor(Rational(1 - chi.re), Rational(-chi.im));
    if (m > 0) {
      numerator = numerator * pow(factor, m);
    } else {
      if (factor.is_zero()) {
        throw Error(Error::Code::out_of_scope,
                    "fixed vector: element " + std::to_string(element) +
                        " fixes a line of the subtracted representation");
      }
      denominator = denominator * pow(factor, -m);
    }
  }
  return numerator / denominator;
}

GaussianRational tomdieck_trace(const Integer& fixed_degree, const VirtualRepZ4& w_perp,
                                const VirtualRepZ4& v_perp, int element) {
  return GaussianRational(Rational(fixed_degree)) *
         lambda_minus_one_trace(w_perp - v_perp, element);
}

TraceIntegrality bk_trace_and_integrality(std::int64_t b, std::int64_t k) {
  const std::int64_t e = b - k;
  const Integer p = Integer(1) << static_cast<unsigned>(e >= 0 ? e : -e);
  return {e >= 0 ? Rational(p) : Rational(Integer(1), p), b >= k};
}

RepSpaces rep_spaces_from_data(std::int64_t m, std::int64_t n, std::int64_t b, std::int64_t k) {
  const VirtualRepZ4 c2 = VirtualRepZ4::line(2);
  const VirtualRepZ4 pair = VirtualRepZ4::line(1) + VirtualRepZ4::line(-1);
  return {m * c2 + (n + k) * pair, (m + b) * c2 + n * pair};
}

}  // namespace eqs

#include "eqsmooth/index_parity.hpp"

#include <algorithm>

namespace eqs {

std::string to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

ParityResult classify_parity(const FixedSetData& f) {
  bool has_surface = false, has_point = false;
  for (const auto& c : f.components) {
    if (c.count <= 0) continue;
    if (c.dimension == 2) has_surface = true;
    if (c.dimension == 0) has_point = true;
  }
  if (!has_surface && !has_point) {
    throw Error(Error::Code::out_of_scope,
                "indeterminate parity: element " + to_string(f.element) +
                    " has an empty fixed set");
  }
  if (has_surface) return {Parity::odd, has_point};
  return {Parity::even, false};
}

Rational lefschetz_index(long long n_plus, long long n_minus) {
  return Rational(n_plus - n_minus, 2);
}

Rational real_index_from_signature(long long signature) {
  if (signature > 0) {
    throw Error(Error::Code::out_of_scope,
                "positive signature: reverse the orientation first");
  }
  return Rational(-signature, 4);
}

Rational k_odd(long long signature) { return Rational(-signature, 16); }

Rational k_klein(long long signature, const Rational& index_twisted) {
  return (Rational(-signature, 4) + index_twisted) / 8;
}

Rational k_klein_best(long long signature, const Rational& index_twisted) {
  return std::max(k_klein(signature, index_twisted), k_klein(signature, -index_twisted));
}

}  // namespace eqs

#include "eqsmooth/obstruction.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace eqs;

namespace {

const Hypothesis& hyp(const ObstructionReport& r, const std::string& name) {
  const auto it = std::find_if(r.hypotheses.begin(), r.hypotheses.end(),
                               [&](const Hypothesis& h) { return h.name == name; });
  REQUIRE(it != r.hypotheses.end());
  return *it;
}

ActionScenario reversed(ActionScenario s) {
  std::reverse(s.summands.begin(), s.summands.end());
  return s;
}

}  // namespace

TEST_CASE("single involution family") {
  for (int k = 1; k <= 4; ++k)
    for (int l = 3 * k; l <= 3 * k + 3; ++l) {
      const auto r = check_z2(z2_template(l, k));
      CHECK(r.hypotheses_hold());
      CHECK(r.b == 0);
      CHECK(r.k == k);
      CHECK(r.verdict == Verdict::nonsmoothable);
    }
  for (int l = 1; l <= 6; ++l) {
    const auto r = check_z2(z2_template(l, 0));
    CHECK(r.k == 0);
    CHECK(r.verdict == Verdict::no_obstruction);
  }
}

TEST_CASE("l = 3, k = 1 in detail") {
  const auto r = check(z2_template(3, 1));
  CHECK(r.bound == Bound::z2_odd_involution);
  CHECK(r.invariants == HomeoInvariants{22, -16, true});
  CHECK(r.b == 0);
  CHECK(r.k == 1);
  REQUIRE(r.trace.has_value());
  CHECK(r.trace->value == Rational(1, 2));
  CHECK_FALSE(r.trace->is_algebraic_integer);
  REQUIRE(r.elements.size() == 1);
  CHECK(r.elements[0].parity == Parity::odd);
  CHECK(hyp(r, "generator_odd").holds);
  CHECK(r.subgroup_hints.empty());
}

TEST_CASE("commuting pair family") {
  for (int k = 1; k <= 3; ++k)
    for (int l1 : {3 * k, 3 * k + 1})
      for (int l2 : {3 * k, 3 * k + 1}) {
        const auto r = check_z2xz2(klein_template(l1, l2, k));
        CHECK(r.hypotheses_hold());
        CHECK(r.b == 0);
        CHECK(r.index_twisted == Rational(0));
        CHECK(r.k == k);
        CHECK(r.verdict == Verdict::nonsmoothable);
      }
}

TEST_CASE("l1 = l2 = 3, k = 1 in detail") {
  const auto r = check(klein_template(3, 3, 1));
  CHECK(r.bound == Bound::z2xz2_odd_pair);
  CHECK(r.b == 0);
  CHECK(r.k == 1);
  CHECK(r.index_twisted == Rational(0));
  REQUIRE(r.elements.size() == 3);
  CHECK(r.elements[0].parity == Parity::odd);
  CHECK(r.elements[1].parity == Parity::odd);
  CHECK(r.elements[2].parity == Parity::even);
  CHECK(r.elements[2].fixed_set.isolated_points() == 4);
  for (const char* h : {"generators_commute", "gen1_odd", "gen2_odd", "composition_even"})
    CHECK(hyp(r, h).holds);
  CHECK(r.verdict == Verdict::nonsmoothable);
}

TEST_CASE("unbalanced point signs raise the bound") {
  ActionScenario s = klein_template(3, 3, 1);
  s.composition_overrides["S0"] = {4, 0};
  const auto r = check(s);
  CHECK(r.index_twisted == Rational(2));
  CHECK(r.k == Rational(5, 4));
  CHECK_FALSE(r.trace.has_value());
  CHECK(r.verdict == Verdict::nonsmoothable);
}

TEST_CASE("subgroup hints") {
  for (int k = 1; k <= 3; ++k) {
    const auto ok = check(klein_template(3 * k, 3 * k, k));
    REQUIRE(ok.subgroup_hints.size() == 3);
    for (const auto& h : ok.subgroup_hints) CHECK(h.hint == SubgroupHint::smoothable_by_construction);

    for (const auto& s : {klein_template(3 * k, 3 * k - 1, k), klein_template(3 * k - 1, 3 * k, k)}) {
      const auto r = check(s);
      REQUIRE(r.subgroup_hints.size() == 3);
      for (const auto& h : r.subgroup_hints) CHECK(h.hint == SubgroupHint::unknown);
    }
  }
  const auto shape = match_klein_template(reversed(klein_template(4, 3, 1)));
  REQUIRE(shape.has_value());
  CHECK(shape->l1 == 4);
  CHECK(shape->l2 == 3);
  CHECK(shape->k == 1);
  CHECK_FALSE(match_klein_template(z2_template(3, 1)).has_value());

  // Same group action, one local label changed: no longer the template.
  ActionScenario odd = klein_template(3, 3, 1);
  odd.gen1.local["S0"] = LocalInvolution::iota0_prime;
  odd.gen2->local["S0"] = LocalInvolution::iota0;
  CHECK_FALSE(match_klein_template(odd).has_value());
  CHECK(subgroup_smoothability_hint(odd, Subgroup::gen1) == SubgroupHint::unknown);
}

TEST_CASE("hypothesis failures are reported, not thrown") {
  SUBCASE("no fixed surfaces: parity indeterminate") {
    const auto r = check(z2_template(0, 1));
    CHECK_FALSE(hyp(r, "generator_odd").holds);
    CHECK(r.verdict == Verdict::no_obstruction);
  }
  SUBCASE("even generator") {
    ActionScenario s = z2_template(3, 1);
    for (auto& [id, l] : s.gen1.local) l = LocalInvolution::iota0_compose_iota0_prime;
    const auto r = check(s);
    CHECK_FALSE(hyp(r, "generator_odd").holds);
    CHECK(r.verdict == Verdict::no_obstruction);
  }
  SUBCASE("odd form") {
    ActionScenario s = z2_template(3, 1);
    s.summands.push_back({"C1", SummandKind::custom, IntegerLattice(IntMatrix{{-1}})});
    s.summands.push_back({"C2", SummandKind::custom, IntegerLattice(IntMatrix{{-1}})});
    s.gen1.swaps.emplace_back("C1", "C2");
    const auto r = check(s);
    CHECK_FALSE(hyp(r, "spin").holds);
    CHECK(r.verdict == Verdict::no_obstruction);
  }
  SUBCASE("positive signature") {
    ActionScenario s = z2_template(1, 0);
    for (const char* id : {"C1", "C2"})
      s.summands.push_back({id, SummandKind::custom, IntegerLattice(IntMatrix{{2}})});
    s.gen1.swaps.emplace_back("C1", "C2");
    const auto r = check(s);
    CHECK_FALSE(hyp(r, "signature_nonpositive").holds);
    CHECK(r.verdict == Verdict::no_obstruction);
  }
  SUBCASE("mixed-dimensional composition") {
    ActionScenario s = klein_template(1, 1, 0);
    s.summands.push_back({"T", SummandKind::s2xs2, std::nullopt});
    s.gen1.local["T"] = LocalInvolution::iota0;
    s.gen2->local["T"] = LocalInvolution::iota0_prime;
    s.summands.push_back({"U", SummandKind::s2xs2, std::nullopt});
    s.gen1.local["U"] = LocalInvolution::iota0;
    s.gen2->local["U"] = LocalInvolution::iota0_compose_iota0_prime;
    REQUIRE(validate_scenario(s).empty());
    const auto r = check(s);
    CHECK(r.elements[2].mixed_dimensions);
    CHECK_FALSE(hyp(r, "composition_even").holds);
    CHECK(r.verdict == Verdict::no_obstruction);
  }
  SUBCASE("invalid scenarios throw") {
    ActionScenario s = z2_template(1, 1);
    s.gen1.swaps.clear();
    CHECK_THROWS_AS(check(s), Error);
    CHECK_THROWS_AS(check_z2xz2(z2_template(3, 1)), Error);
  }
}

TEST_CASE("trace is integral exactly when b >= k") {
  for (int l = 0; l <= 6; ++l)
    for (int k = 0; k <= 3; ++k) {
      const auto r = check(z2_template(l, k));
      REQUIRE(r.trace.has_value());
      CHECK(r.trace->is_algebraic_integer == (Rational(static_cast<long long>(r.b)) >= r.k));
    }
}

TEST_CASE("verdict does not depend on summand order") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 10; ++t) {
    ActionScenario s = t % 2 ? z2_template(3 + t, 1 + t % 2) : klein_template(3, 3 + t % 2, 1);
    const auto base = check(s);
    std::shuffle(s.summands.begin(), s.summands.end(), rng);
    const auto r = check(s);
    CHECK(r.verdict == base.verdict);
    CHECK(r.b == base.b);
    CHECK(r.k == base.k);
  }
}

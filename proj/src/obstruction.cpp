#include "eqsmooth/obstruction.hpp"

#include <algorithm>

namespace eqs {

namespace {

ElementReport element_report(const ActionScenario& s, GroupElement g) {
  ElementReport r;
  r.element = g;
  r.fixed_set = fixed_set_data(s, g);
  try {
    const ParityResult p = classify_parity(r.fixed_set);
    r.parity = p.parity;
    r.mixed_dimensions = p.mixed_dimensions;
  } catch (const Error& e) {
    if (e.code() != Error::Code::out_of_scope) throw;
  }
  if (r.fixed_set.n_plus && r.fixed_set.n_minus)
    r.index = lefschetz_index(*r.fixed_set.n_plus, *r.fixed_set.n_minus);
  return r;
}

Hypothesis parity_hypothesis(const std::string& name, const ElementReport& r, Parity wanted) {
  Hypothesis h{name, false, ""};
  if (!r.parity) {
    h.detail = to_string(r.element) + " has an empty fixed set; parity is indeterminate";
  } else {
    h.holds = *r.parity == wanted && !r.mixed_dimensions;
    h.detail = to_string(r.element) + " is " + to_string(*r.parity);
    if (r.mixed_dimensions) h.detail += " (fixed set mixes 0- and 2-dimensional components)";
  }
  return h;
}

void common_hypotheses(const HomeoInvariants& inv, std::vector<Hypothesis>& out) {
  out.push_back({"spin", inv.even,
                 inv.even ? "intersection form is even" : "intersection form is odd"});
  out.push_back({"signature_nonpositive", inv.signature <= 0,
                 "signature " + std::to_string(inv.signature)});
  out.push_back({"b1_zero", true, "every summand is simply connected"});
}

void finish(ObstructionReport& r) {
  if (is_integral(r.k)) {
    const Integer k = boost::multiprecision::numerator(r.k);
    r.trace = bk_trace_and_integrality(static_cast<std::int64_t>(r.b),
                                       static_cast<std::int64_t>(k));
  }
  r.verdict = r.hypotheses_hold() && Rational(static_cast<long long>(r.b)) < r.k
                  ? Verdict::nonsmoothable
                  : Verdict::no_obstruction;
}

}  // namespace

bool ObstructionReport::hypotheses_hold() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(),
                     [](const Hypothesis& h) { return h.holds; });
}

ObstructionReport check_z2(const ActionScenario& s) {
  if (s.group != Group::z2) {
    throw Error(Error::Code::malformed_input, "check_z2 needs a Z2 scenario");
  }
  require_valid(s);

  ObstructionReport r;
  r.bound = Bound::z2_odd_involution;
  r.invariants = total_invariants(s);
  common_hypotheses(r.invariants, r.hypotheses);

  r.elements.push_back(element_report(s, GroupElement::gen1));
  r.hypotheses.push_back(parity_hypothesis("generator_odd", r.elements[0], Parity::odd));

  const LatticeIsometry op = induced_cohomology_action(s, GroupElement::gen1);
  r.b = b_plus_invariant(std::span(&op, 1));
  r.k = k_odd(r.invariants.signature);
  finish(r);
  return r;
}

ObstructionReport check_z2xz2(const ActionScenario& s) {
  if (s.group != Group::z2xz2) {
    throw Error(Error::Code::malformed_input, "check_z2xz2 needs a Z2xZ2 scenario");
  }
  require_valid(s);

  ObstructionReport r;
  r.bound = Bound::z2xz2_odd_pair;
  r.invariants = total_invariants(s);
  common_hypotheses(r.invariants, r.hypotheses);

  const std::vector<LatticeIsometry> ops{induced_cohomology_action(s, GroupElement::gen1),
                                         induced_cohomology_action(s, GroupElement::gen2)};
  const bool commuting = commute(ops[0], ops[1]);
  r.hypotheses.push_back({"generators_commute", commuting,
                          commuting ? "I1 I2 = I2 I1" : "I1 I2 != I2 I1"});

  for (GroupElement g : nonidentity_elements(s.group)) r.elements.push_back(element_report(s, g));
  r.hypotheses.push_back(parity_hypothesis("gen1_odd", r.elements[0], Parity::odd));
  r.hypotheses.push_back(parity_hypothesis("gen2_odd", r.elements[1], Parity::odd));
  r.hypotheses.push_back(parity_hypothesis("composition_even", r.elements[2], Parity::even));

  r.b = b_plus_invariant(ops);
  r.index_twisted = r.elements[2].index;
  r.k = k_klein_best(r.invariants.signature, r.index_twisted.value_or(Rational(0)));

  for (Subgroup sg : {Subgroup::gen1, Subgroup::gen2, Subgroup::diagonal})
    r.subgroup_hints.push_back({sg, subgroup_smoothability_hint(s, sg)});
  finish(r);
  return r;
}

ObstructionReport check(const ActionScenario& s) {
  return s.group == Group::z2 ? check_z2(s) : check_z2xz2(s);
}

std::optional<KleinTemplateShape> match_klein_template(const ActionScenario& s) {
  if (s.group != Group::z2xz2 || !s.gen2 || !validate_scenario(s).empty()) return std::nullopt;

  std::map<std::string, std::string> p1, p2;
  for (const auto& [a, b] : s.gen1.swaps) p1[a] = b, p1[b] = a;
  for (const auto& [a, b] : s.gen2->swaps) p2[a] = b, p2[b] = a;

  int central = 0, fixed_by_1 = 0, fixed_by_2 = 0, e8 = 0;
  for (const Summand& sm : s.summands) {
    const bool f1 = !p1.contains(sm.id), f2 = !p2.contains(sm.id);
    if (sm.kind == SummandKind::minus_e8) {
      ++e8;  // validity already puts these in free orbits
      continue;
    }
    if (sm.kind != SummandKind::s2xs2) return std::nullopt;
    const auto l1 = s.gen1.local.find(sm.id);
    const auto l2 = s.gen2->local.find(sm.id);
    if (f1 && f2) {
      if (l1->second != LocalInvolution::iota0 || l2->second != LocalInvolution::iota0_prime)
        return std::nullopt;
      ++central;
    } else if (f1) {
      if (l1->second != LocalInvolution::iota0) return std::nullopt;
      ++fixed_by_1;
    } else if (f2) {
      if (l2->second != LocalInvolution::iota0_prime) return std::nullopt;
      ++fixed_by_2;
    } else {
      return std::nullopt;  // S^2xS^2 in a free orbit is not part of the template
    }
  }
  if (central != 1 || fixed_by_1 % 2 != 0 || fixed_by_2 % 2 != 0 || e8 % 4 != 0)
    return std::nullopt;
  return KleinTemplateShape{fixed_by_1 / 2, fixed_by_2 / 2, e8 / 4};
}

SubgroupHint subgroup_smoothability_hint(const ActionScenario& s, Subgroup) {
  const auto shape = match_klein_template(s);
  if (!shape) return SubgroupHint::unknown;
  const bool enough = shape->l1 >= 3 * shape->k && shape->l2 >= 3 * shape->k;
  return enough ? SubgroupHint::smoothable_by_construction : SubgroupHint::unknown;
}

std::string to_string(Bound b) {
  return b == Bound::z2_odd_involution ? "z2_odd_involution" : "z2xz2_odd_pair";
}

std::string to_string(Verdict v) {
  return v == Verdict::nonsmoothable ? "nonsmoothable" : "no_obstruction";
}

std::string to_string(Subgroup s) {
  switch (s) {
    case Subgroup::gen1: return "gen1";
    case Subgroup::gen2: return "gen2";
    case Subgroup::diagonal: return "diagonal";
  }
  return "?";
}

std::string to_string(SubgroupHint h) {
  return h == SubgroupHint::smoothable_by_construction ? "smoothable_by_construction"
                                                       : "unknown";
}

}  // namespace eqs

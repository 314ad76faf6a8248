#include "eqsmooth/scenario.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace eqs {

namespace {

using Permutation = std::vector<std::size_t>;

// Klein four-group {identity, a, b, ab} encoded as two bits.
unsigned bits(LocalInvolution l) {
  switch (l) {
    case LocalInvolution::identity: return 0;
    case LocalInvolution::iota0: return 1;
    case LocalInvolution::iota0_prime: return 2;
    case LocalInvolution::iota0_compose_iota0_prime: return 3;
  }
  return 0;
}

LocalInvolution from_bits(unsigned b) {
  constexpr LocalInvolution table[] = {
      LocalInvolution::identity, LocalInvolution::iota0,
      LocalInvolution::iota0_prime, LocalInvolution::iota0_compose_iota0_prime};
  return table[b & 3u];
}

bool rigid(SummandKind k) { return k != SummandKind::s2xs2; }

std::string rigid_piece_name(SummandKind k) {
  switch (k) {
    case SummandKind::minus_e8: return "E8";
    case SummandKind::k3: return "K3";
    case SummandKind::custom: return "custom";
    case SummandKind::s2xs2: return "S2xS2";
  }
  return "?";
}

std::map<std::string, std::size_t> index_by_id(const ActionScenario& s) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < s.summands.size(); ++i) idx.emplace(s.summands[i].id, i);
  return idx;
}

// Resolves a generator's transpositions; appends violations and returns
// nullopt on any structural problem.
std::optional<Permutation> resolve_permutation(
    const ActionScenario& s, const GeneratorAction& gen, const std::string& name,
    const std::map<std::string, std::size_t>& idx, std::vector<Violation>& out) {
  Permutation perm(s.summands.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  bool ok = true;
  for (const auto& [a, b] : gen.swaps) {
    const auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end()) {
      out.push_back({"unknown_summand", name,
                     name + " swaps unknown summand " + (ia == idx.end() ? a : b)});
      ok = false;
      continue;
    }
    if (ia->second == ib->second) {
      out.push_back({"invalid_swap", name, name + " swaps " + a + " with itself"});
      ok = false;
      continue;
    }
    if (perm[ia->second] != ia->second || perm[ib->second] != ib->second) {
      out.push_back({"permutation_not_involutive", name,
                     name + " moves " + a + " or " + b + " more than once"});
      ok = false;
      continue;
    }
    const Summand& sa = s.summands[ia->second];
    const Summand& sb = s.summands[ib->second];
    if (sa.kind != sb.kind || sa.custom != sb.custom) {
      out.push_back({"kind_mismatch", name,
                     name + " exchanges summands of different kinds: " + a + ", " + b});
      ok = false;
    }
    perm[ia->second] = ib->second;
    perm[ib->second] = ia->second;
  }
  if (!ok) return std::nullopt;
  return perm;
}

void check_labels(const ActionScenario& s, const GeneratorAction& gen,
                  const std::string& name, const Permutation& perm,
                  const std::map<std::string, std::size_t>& idx,
                  std::vector<Violation>& out) {
  for (const auto& [id, label] : gen.local) {
    const auto it = idx.find(id);
    if (it == idx.end()) {
      out.push_back({"unknown_summand", name, name + " labels unknown summand " + id});
      continue;
    }
    if (perm[it->second] != it->second) {
      out.push_back({"label_on_moved_summand", name,
                     name + " attaches a local involution to moved summand " + id});
    } else if (rigid(s.summands[it->second].kind)) {
      out.push_back({"label_on_rigid_summand", name,
                     name + " attaches a local involution to non-S2xS2 summand " + id});
    }
  }
  for (std::size_t i = 0; i < s.summands.size(); ++i) {
    const Summand& sm = s.summands[i];
    if (perm[i] == i && !rigid(sm.kind) && !gen.local.contains(sm.id)) {
      out.push_back({"missing_local_label", name,
                     name + " fixes " + sm.id + " without a local involution"});
    }
  }
}

struct ElementAction {
  Permutation perm;
  std::vector<LocalInvolution> local;  // meaningful on fixed summands only
};

ElementAction generator_action(const ActionScenario& s, const GeneratorAction& gen,
                               const Permutation& perm) {
  ElementAction a{perm, std::vector<LocalInvolution>(s.summands.size(),
                                                     LocalInvolution::identity)};
  for (std::size_t i = 0; i < s.summands.size(); ++i) {
    if (const auto it = gen.local.find(s.summands[i].id); it != gen.local.end())
      a.local[i] = it->second;
  }
  return a;
}

// A summand fixed by the product but moved by both generators is mapped to
// itself through two identical exchanges, so the product acts trivially.
ElementAction product_action(const ElementAction& a, const ElementAction& b) {
  ElementAction p{Permutation(a.perm.size()),
                  std::vector<LocalInvolution>(a.perm.size(), LocalInvolution::identity)};
  for (std::size_t i = 0; i < a.perm.size(); ++i) {
    p.perm[i] = a.perm[b.perm[i]];
    if (a.perm[i] == i && b.perm[i] == i) p.local[i] = compose(a.local[i], b.local[i]);
  }
  return p;
}

struct ResolvedScenario {
  std::vector<std::pair<GroupElement, ElementAction>> elements;
};

// Assumes a valid scenario.
ResolvedScenario resolve(const ActionScenario& s) {
  std::vector<Violation> sink;
  const auto idx = index_by_id(s);
  ResolvedScenario r;
  const auto p1 = resolve_permutation(s, s.gen1, "generator1", idx, sink);
  const ElementAction a1 = generator_action(s, s.gen1, *p1);
  r.elements.emplace_back(GroupElement::gen1, a1);
  if (s.group == Group::z2xz2) {
    const auto p2 = resolve_permutation(s, *s.gen2, "generator2", idx, sink);
    const ElementAction a2 = generator_action(s, *s.gen2, *p2);
    r.elements.emplace_back(GroupElement::gen2, a2);
    r.elements.emplace_back(GroupElement::product, product_action(a1, a2));
  }
  return r;
}

const ElementAction& action_for(const ResolvedScenario& r, GroupElement g) {
  for (const auto& [e, a] : r.elements)
    if (e == g) return a;
  throw Error(Error::Code::malformed_input,
              "group element " + to_string(g) + " is not part of the scenario's group");
}

const std::map<std::string, PointSigns>& overrides_for(const ActionScenario& s,
                                                       GroupElement g) {
  switch (g) {
    case GroupElement::gen1: return s.gen1.overrides;
    case GroupElement::gen2: return s.gen2->overrides;
    default: return s.composition_overrides;
  }
}

void check_overrides(const ActionScenario& s, const std::map<std::string, PointSigns>& ov,
                     const std::string& name, const ElementAction& action,
                     const std::map<std::string, std::size_t>& idx,
                     std::vector<Violation>& out) {
  for (const auto& [id, signs] : ov) {
    const auto it = idx.find(id);
    if (it == idx.end()) {
      out.push_back({"unknown_summand", name, name + " overrides unknown summand " + id});
      continue;
    }
    const std::size_t i = it->second;
    if (action.perm[i] != i || rigid(s.summands[i].kind) ||
        action.local[i] != LocalInvolution::iota0_compose_iota0_prime) {
      out.push_back({"invalid_override", name,
                     name + " overrides point signs on " + id +
                         ", which carries no isolated fixed points"});
      continue;
    }
    if (signs.n_plus < 0 || signs.n_minus < 0 || signs.n_plus + signs.n_minus != 4) {
      out.push_back({"invalid_override", name,
                     name + " override on " + id + " must split 4 points as n_plus + n_minus"});
    }
  }
}

}  // namespace

LocalInvolution compose(LocalInvolution a, LocalInvolution b) {
  return from_bits(bits(a) ^ bits(b));
}

std::vector<GroupElement> nonidentity_elements(Group g) {
  if (g == Group::z2) return {GroupElement::gen1};
  return {GroupElement::gen1, GroupElement::gen2, GroupElement::product};
}

std::vector<Violation> validate_scenario(const ActionScenario& s) {
  std::vector<Violation> out;

  std::set<std::string> seen;
  for (const Summand& sm : s.summands) {
    if (sm.id.empty()) out.push_back({"empty_id", "", "summand with empty id"});
    if (!seen.insert(sm.id).second)
      out.push_back({"duplicate_id", sm.id, "summand id " + sm.id + " is not unique"});
    if ((sm.kind == SummandKind::custom) != sm.custom.has_value())
      out.push_back({"custom_lattice", sm.id,
                     "summand " + sm.id + ": a Gram matrix is required exactly for custom pieces"});
  }

  if (s.group == Group::z2xz2 && !s.gen2)
    out.push_back({"missing_generator", "generator2", "Z2xZ2 scenario needs generator2"});
  if (s.group == Group::z2 && s.gen2)
    out.push_back({"unexpected_generator", "generator2", "Z2 scenario must not define generator2"});
  if (s.group == Group::z2 && !s.composition_overrides.empty())
    out.push_back({"unexpected_generator", "composition",
                   "Z2 scenario has no composite element to override"});
  if (!out.empty()) return out;

  const auto idx = index_by_id(s);
  const auto p1 = resolve_permutation(s, s.gen1, "generator1", idx, out);
  std::optional<Permutation> p2;
  if (s.gen2) p2 = resolve_permutation(s, *s.gen2, "generator2", idx, out);
  if (p1) check_labels(s, s.gen1, "generator1", *p1, idx, out);
  if (p2) check_labels(s, *s.gen2, "generator2", *p2, idx, out);
  if (!p1 || (s.gen2 && !p2)) return out;

  std::vector<std::pair<GroupElement, ElementAction>> elements;
  elements.emplace_back(GroupElement::gen1, generator_action(s, s.gen1, *p1));
  if (s.gen2) {
    for (std::size_t i = 0; i < p1->size(); ++i) {
      if ((*p1)[(*p2)[i]] != (*p2)[(*p1)[i]]) {
        out.push_back({"generators_do_not_commute", s.summands[i].id,
                       "generator permutations do not commute at " + s.summands[i].id});
        return out;
      }
    }
    elements.emplace_back(GroupElement::gen2, generator_action(s, *s.gen2, *p2));
    elements.emplace_back(GroupElement::product,
                          product_action(elements[0].second, elements[1].second));
  }

  for (const auto& [g, action] : elements) {
    const GeneratorAction* gen = g == GroupElement::gen1   ? &s.gen1
                                 : g == GroupElement::gen2 ? &*s.gen2
                                                           : nullptr;
    for (std::size_t i = 0; i < s.summands.size(); ++i) {
      if (action.perm[i] != i) continue;
      const Summand& sm = s.summands[i];
      if (rigid(sm.kind)) {
        out.push_back({"fixed_rigid_summand", sm.id,
                       rigid_piece_name(sm.kind) + " piece fixed by group element " +
                           to_string(g) + ": " + sm.id});
        continue;
      }
      if (gen && !gen->local.contains(sm.id)) continue;  // already reported
      if (action.local[i] == LocalInvolution::identity) {
        out.push_back({"trivial_local_action", sm.id,
                       "group element " + to_string(g) + " acts trivially on summand " + sm.id});
      }
    }
    check_overrides(s, overrides_for(s, g),
                    g == GroupElement::product ? "composition" : to_string(g), action, idx, out);
  }
  return out;
}

void require_valid(const ActionScenario& s) {
  const auto violations = validate_scenario(s);
  if (violations.empty()) return;
  std::string msg = "invalid scenario:";
  for (const auto& v : violations) msg += "\n  [" + v.code + "] " + v.message;
  throw Error(Error::Code::validation, msg);
}

IntegerLattice summand_lattice(const Summand& s) {
  switch (s.kind) {
    case SummandKind::s2xs2: return make_standard(StandardForm::s2xs2);
    case SummandKind::minus_e8: return make_standard(StandardForm::minus_e8);
    case SummandKind::k3: return make_standard(StandardForm::k3);
    case SummandKind::custom:
      if (!s.custom) throw Error(Error::Code::validation, "custom summand without Gram matrix");
      return *s.custom;
  }
  throw Error(Error::Code::internal, "unknown summand kind");
}

IntegerLattice total_lattice(const ActionScenario& s) {
  IntegerLattice total;
  for (const Summand& sm : s.summands) total = direct_sum(total, summand_lattice(sm));
  return total;
}

LatticeIsometry induced_cohomology_action(const ActionScenario& s, GroupElement g) {
  require_valid(s);
  IntegerLattice lattice = total_lattice(s);
  const std::size_t n = lattice.rank();
  if (g == GroupElement::identity) return {IntMatrix::identity(n), std::move(lattice)};

  const ResolvedScenario r = resolve(s);
  const ElementAction& action = action_for(r, g);

  std::vector<std::size_t> offset(s.summands.size() + 1, 0);
  for (std::size_t i = 0; i < s.summands.size(); ++i)
    offset[i + 1] = offset[i] + summand_lattice(s.summands[i]).rank();

  // iota^* restricted to each piece is the identification with its image;
  // every local involution acts trivially on H^2(S^2xS^2).
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < s.summands.size(); ++i) {
    const std::size_t j = action.perm[i];
    for (std::size_t d = 0; d < offset[i + 1] - offset[i]; ++d)
      m(offset[i] + d, offset[j] + d) = -1;
  }
  return {std::move(m), std::move(lattice)};
}

long long FixedSetData::isolated_points() const {
  long long total = 0;
  for (const auto& c : components)
    if (c.dimension == 0) total += c.count;
  return total;
}

FixedSetData fixed_set_data(const ActionScenario& s, GroupElement g) {
  if (g == GroupElement::identity) {
    throw Error(Error::Code::malformed_input,
                "the identity element fixes everything; fixed-set data is undefined");
  }
  require_valid(s);
  const ResolvedScenario r = resolve(s);
  const ElementAction& action = action_for(r, g);
  const auto& ov = overrides_for(s, g);

  long long spheres = 0, points = 0, plus = 0, minus = 0;
  for (std::size_t i = 0; i < s.summands.size(); ++i) {
    if (action.perm[i] != i || rigid(s.summands[i].kind)) continue;
    switch (action.local[i]) {
      case LocalInvolution::iota0:
      case LocalInvolution::iota0_prime:
        spheres += 2;
        break;
      case LocalInvolution::iota0_compose_iota0_prime: {
        points += 4;
        const auto it = ov.find(s.summands[i].id);
        const PointSigns signs = it != ov.end() ? it->second : PointSigns{2, 2};
        plus += signs.n_plus;
        minus += signs.n_minus;
        break;
      }
      case LocalInvolution::identity:
        break;
    }
  }

  FixedSetData f;
  f.element = g;
  if (points > 0) f.components.push_back({0, points});
  if (spheres > 0) f.components.push_back({2, spheres});
  if (points > 0 && spheres == 0) {
    f.n_plus = plus;
    f.n_minus = minus;
  }
  return f;
}

HomeoInvariants total_invariants(const ActionScenario& s) {
  const IntegerLattice l = total_lattice(s);
  return {static_cast<long long>(l.rank()), signature_profile(l).signature(), is_even(l)};
}

HomeoInvariants invariants_of(const ManifoldExpression& e) {
  HomeoInvariants out;
  for (const auto& [count, kind] : e.terms) {
    if (kind == SummandKind::custom) {
      throw Error(Error::Code::malformed_input, "custom pieces have no standard invariants");
    }
    const IntegerLattice l = summand_lattice(Summand{"", kind, std::nullopt});
    out.b2 += count * static_cast<long long>(l.rank());
    out.signature += count * signature_profile(l).signature();
    if (count != 0 && !is_even(l)) out.even = false;
  }
  return out;
}

bool homeo_invariants_equal(const HomeoInvariants& a, const HomeoInvariants& b) {
  return a == b;
}

bool homeo_invariants_equal(const ActionScenario& a, const ActionScenario& b) {
  return total_invariants(a) == total_invariants(b);
}

bool homeo_invariants_equal(const ManifoldExpression& a, const ManifoldExpression& b) {
  return invariants_of(a) == invariants_of(b);
}

KleinTotalSpaceCheck klein_total_space_check(long long l1, long long l2, long long k) {
  const long long y = 2 * l1 + 2 * l2 + 1;
  KleinTotalSpaceCheck c;
  c.stated = invariants_of({{{y - 6 * k, SummandKind::s2xs2}, {4 * k, SummandKind::k3}}});
  c.constructed = invariants_of({{{y, SummandKind::s2xs2}, {4 * k, SummandKind::minus_e8}}});
  c.two_k_k3_variant =
      invariants_of({{{y - 6 * k, SummandKind::s2xs2}, {2 * k, SummandKind::k3}}});
  c.mismatch = !(c.stated == c.constructed);
  return c;
}

ActionScenario z2_template(int l, int k) {
  ActionScenario s;
  s.group = Group::z2;
  for (int i = 1; i <= l; ++i) {
    const std::string id = "S" + std::to_string(i);
    s.summands.push_back({id, SummandKind::s2xs2, std::nullopt});
    s.gen1.local[id] = LocalInvolution::iota0;
  }
  for (int i = 1; i <= k; ++i)
    s.summands.push_back({"A" + std::to_string(i), SummandKind::minus_e8, std::nullopt});
  for (int i = 1; i <= k; ++i) {
    s.summands.push_back({"B" + std::to_string(i), SummandKind::minus_e8, std::nullopt});
    s.gen1.swaps.emplace_back("A" + std::to_string(i), "B" + std::to_string(i));
  }
  return s;
}

ActionScenario klein_template(int l1, int l2, int k) {
  ActionScenario s;
  s.group = Group::z2xz2;
  s.gen2 = GeneratorAction{};
  GeneratorAction& g1 = s.gen1;
  GeneratorAction& g2 = *s.gen2;
  auto add = [&](const std::string& id, SummandKind kind) {
    s.summands.push_back({id, kind, std::nullopt});
  };

  add("S0", SummandKind::s2xs2);
  g1.local["S0"] = LocalInvolution::iota0;
  g2.local["S0"] = LocalInvolution::iota0_prime;

  for (int i = 1; i <= l1; ++i) {
    const std::string a = "S1_" + std::to_string(i), b = "S2_" + std::to_string(i);
    add(a, SummandKind::s2xs2);
    add(b, SummandKind::s2xs2);
    g1.local[a] = g1.local[b] = LocalInvolution::iota0;
    g2.swaps.emplace_back(a, b);
  }
  for (int j = 1; j <= l2; ++j) {
    const std::string a = "S3_" + std::to_string(j), b = "S4_" + std::to_string(j);
    add(a, SummandKind::s2xs2);
    add(b, SummandKind::s2xs2);
    g2.local[a] = g2.local[b] = LocalInvolution::iota0_prime;
    g1.swaps.emplace_back(a, b);
  }
  for (int i = 1; i <= k; ++i) {
    const std::string n = "_" + std::to_string(i);
    for (const char* w : {"W1", "W2", "W3", "W4"}) add(w + n, SummandKind::minus_e8);
    g1.swaps.emplace_back("W1" + n, "W2" + n);
    g1.swaps.emplace_back("W3" + n, "W4" + n);
    g2.swaps.emplace_back("W1" + n, "W3" + n);
    g2.swaps.emplace_back("W2" + n, "W4" + n);
  }
  return s;
}

std::string to_string(Group g) { return g == Group::z2 ? "Z2" : "Z2xZ2"; }

std::string to_string(SummandKind k) {
  switch (k) {
    case SummandKind::s2xs2: return "s2xs2";
    case SummandKind::minus_e8: return "minus_e8";
    case SummandKind::k3: return "k3";
    case SummandKind::custom: return "custom";
  }
  return "?";
}

std::string to_string(LocalInvolution l) {
  switch (l) {
    case LocalInvolution::identity: return "identity";
    case LocalInvolution::iota0: return "iota0";
    case LocalInvolution::iota0_prime: return "iota0_prime";
    case LocalInvolution::iota0_compose_iota0_prime: return "iota0_compose_iota0_prime";
  }
  return "?";
}

std::string to_string(GroupElement g) {
  switch (g) {
    case GroupElement::identity: return "identity";
    case GroupElement::gen1: return "gen1";
    case GroupElement::gen2: return "gen2";
    case GroupElement::product: return "gen1*gen2";
  }
  return "?";
}

std::optional<Group> parse_group(const std::string& s) {
  if (s == "Z2") return Group::z2;
  if (s == "Z2xZ2") return Group::z2xz2;
  return std::nullopt;
}

std::optional<SummandKind> parse_summand_kind(const std::string& s) {
  for (auto k : {SummandKind::s2xs2, SummandKind::minus_e8, SummandKind::k3, SummandKind::custom})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::optional<LocalInvolution> parse_local_involution(const std::string& s) {
  for (auto l : {LocalInvolution::identity, LocalInvolution::iota0, LocalInvolution::iota0_prime,
                 LocalInvolution::iota0_compose_iota0_prime})
    if (to_string(l) == s) return l;
  return std::nullopt;
}

}  // namespace eqs

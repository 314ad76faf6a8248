#pragma once

// Declarative equivariant connected sums of S^2xS^2, -E8, K3 and custom
// pieces under Z2 or Z2xZ2, and the data they induce: operators I = -iota^*
// on H^2, fixed sets, and the homeomorphism invariants of the total space.

#include "eqsmooth/isometry.hpp"
#include "eqsmooth/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eqs {

enum class Group { z2, z2xz2 };

enum class SummandKind { s2xs2, minus_e8, k3, custom };

/// Local smooth involutions available on a permutation-fixed S^2xS^2 piece.
/// They form a Klein four-group under composition.
enum class LocalInvolution { identity, iota0, iota0_prime, iota0_compose_iota0_prime };

LocalInvolution compose(LocalInvolution a, LocalInvolution b);

enum class GroupElement { identity, gen1, gen2, product };

struct Summand {
  std::string id;
  SummandKind kind = SummandKind::s2xs2;
  std::optional<IntegerLattice> custom;  // set iff kind == custom

  friend bool operator==(const Summand&, const Summand&) = default;
};

struct PointSigns {
  long long n_plus = 0;
  long long n_minus = 0;

  friend bool operator==(const PointSigns&, const PointSigns&) = default;
};

struct GeneratorAction {
  /// Disjoint transpositions of summand ids; everything else is fixed.
  std::vector<std::pair<std::string, std::string>> swaps;
  std::map<std::string, LocalInvolution> local;
  /// Replaces the default n_plus = n_minus split of isolated fixed points.
  std::map<std::string, PointSigns> overrides;

  friend bool operator==(const GeneratorAction&, const GeneratorAction&) = default;
};

struct ActionScenario {
  Group group = Group::z2;
  std::vector<Summand> summands;
  GeneratorAction gen1;
  std::optional<GeneratorAction> gen2;
  /// Point-sign overrides for the product element gen1*gen2.
  std::map<std::string, PointSigns> composition_overrides;

  friend bool operator==(const ActionScenario&, const ActionScenario&) = default;
};

struct Violation {
  std::string code;
  std::string subject;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every rule a scenario must satisfy; an empty result means valid.
std::vector<Violation> validate_scenario(const ActionScenario& s);

/// Throws Error(validation) listing the violations, if any.
void require_valid(const ActionScenario& s);

/// Non-identity elements of the scenario's group, in canonical order.
std::vector<GroupElement> nonidentity_elements(Group g);

/// Block operator on the direct sum of summand lattices.  Non-identity
/// elements give I = -(permutation), local actions being trivial on H^2;
/// the identity element gives +Id.
LatticeIsometry induced_cohomology_action(const ActionScenario& s, GroupElement g);

struct FixedComponent {
  int dimension = 0;  // 0 or 2
  long long count = 0;

  friend bool operator==(const FixedComponent&, const FixedComponent&) = default;
};

struct FixedSetData {
  GroupElement element = GroupElement::gen1;
  std::vector<FixedComponent> components;  // at most one entry per dimension
  std::optional<long long> n_plus;         // only when every component is 0-dim
  std::optional<long long> n_minus;

  bool empty() const { return components.empty(); }
  long long isolated_points() const;

  friend bool operator==(const FixedSetData&, const FixedSetData&) = default;
};

/// Per-summand bookkeeping: iota0 / iota0_prime contribute two fixed
/// spheres, their composite four isolated points (split evenly unless
/// overridden).  Throws Error(malformed_input) for the identity element.
FixedSetData fixed_set_data(const ActionScenario& s, GroupElement g);

struct HomeoInvariants {
  long long b2 = 0;
  long long signature = 0;
  bool even = true;

  friend bool operator==(const HomeoInvariants&, const HomeoInvariants&) = default;
};

IntegerLattice summand_lattice(const Summand& s);
IntegerLattice total_lattice(const ActionScenario& s);
HomeoInvariants total_invariants(const ActionScenario& s);

/// A formal connected sum such as 3(S^2xS^2) # 2(-E8); counts may be any
/// nonnegative integers.
struct ManifoldExpression {
  std::vector<std::pair<long long, SummandKind>> terms;
};

HomeoInvariants invariants_of(const ManifoldExpression& e);

/// (b2, signature, parity) classify the simply connected spin sums built
/// here up to homeomorphism.
bool homeo_invariants_equal(const HomeoInvariants& a, const HomeoInvariants& b);
bool homeo_invariants_equal(const ActionScenario& a, const ActionScenario& b);
bool homeo_invariants_equal(const ManifoldExpression& a, const ManifoldExpression& b);

/// Compares the advertised total space (2l1+2l2+1-6k)(S^2xS^2) # 4k(K3) of
/// the Klein family with what the construction Y # 4 k(-E8) actually builds.
struct KleinTotalSpaceCheck {
  HomeoInvariants stated;
  HomeoInvariants constructed;
  /// The construction matches (2l1+2l2+1-6k)(S^2xS^2) # 2k(K3) instead.
  HomeoInvariants two_k_k3_variant;
  bool mismatch = false;
};

KleinTotalSpaceCheck klein_total_space_check(long long l1, long long l2, long long k);

// Template families.

/// l copies of S^2xS^2 with iota0, plus two clusters of k copies of -E8
/// exchanged by the generator.
ActionScenario z2_template(int l, int k);

/// Y = (2 l1 + 2 l2 + 1)(S^2xS^2) with a central piece fixed by both
/// generators, l1 pairs fixed by gen1 and swapped by gen2, l2 pairs fixed by
/// gen2 and swapped by gen1, plus four clusters W1..W4 of k copies of -E8
/// permuted freely.
ActionScenario klein_template(int l1, int l2, int k);

std::string to_string(Group g);
std::string to_string(SummandKind k);
std::string to_string(LocalInvolution l);
std::string to_string(GroupElement g);
std::optional<Group> parse_group(const std::string& s);
std::optional<SummandKind> parse_summand_kind(const std::string& s);
std::optional<LocalInvolution> parse_local_involution(const std::string& s);

}  // namespace eqs

#pragma once

// Nonsmoothability certificates.  For an odd involution the bound is
//   b_+^I >= -signature / 16,
// and for two commuting odd involutions with even composition
//   b_+^<I1,I2> >= -signature / 32 + |index_{I1 I2} D| / 8.
// A scenario satisfying every hypothesis with b < k admits no smooth
// structure in which the action is smooth.

#include "eqsmooth/index_parity.hpp"
#include "eqsmooth/rep_ring.hpp"
#include "eqsmooth/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eqs {

enum class Bound { z2_odd_involution, z2xz2_odd_pair };
enum class Verdict { nonsmoothable, no_obstruction };
enum class Subgroup { gen1, gen2, diagonal };
enum class SubgroupHint { smoothable_by_construction, unknown };

std::string to_string(Bound b);
std::string to_string(Verdict v);
std::string to_string(Subgroup s);
std::string to_string(SubgroupHint h);

struct Hypothesis {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct ElementReport {
  GroupElement element = GroupElement::gen1;
  FixedSetData fixed_set;
  std::optional<Parity> parity;  // empty when indeterminate
  bool mixed_dimensions = false;
  std::optional<Rational> index;  // Lefschetz index for isolated fixed points
};

struct SubgroupReport {
  Subgroup subgroup = Subgroup::gen1;
  SubgroupHint hint = SubgroupHint::unknown;
};

struct ObstructionReport {
  Bound bound = Bound::z2_odd_involution;
  HomeoInvariants invariants;
  std::vector<Hypothesis> hypotheses;
  std::size_t b = 0;
  Rational k = 0;
  std::optional<Rational> index_twisted;
  /// 2^(b-k); present only when k is integral.
  std::optional<TraceIntegrality> trace;
  Verdict verdict = Verdict::no_obstruction;
  std::vector<ElementReport> elements;
  std::vector<SubgroupReport> subgroup_hints;

  bool hypotheses_hold() const;
};

/// Single odd involution.  Requires group Z2 and a valid scenario (throws
/// Error(validation) otherwise); unmet hypotheses are reported, not thrown.
ObstructionReport check_z2(const ActionScenario& s);

/// Commuting pair of odd involutions with even composition.
ObstructionReport check_z2xz2(const ActionScenario& s);

/// Dispatches on the scenario's group.
ObstructionReport check(const ActionScenario& s);

struct KleinTemplateShape {
  int l1 = 0;
  int l2 = 0;
  int k = 0;
};

/// Recognises the Klein template structurally (independent of summand ids).
std::optional<KleinTemplateShape> match_klein_template(const ActionScenario& s);

/// One-sided: smoothable_by_construction only for a recognised Klein
/// template with l1 >= 3k and l2 >= 3k, where each proper subgroup's action
/// splits as standard local involutions # a swap of two smoothable halves
/// (l(S^2xS^2) # 2k(-E8) being homeomorphic to (l-3k)(S^2xS^2) # k(K3)).
SubgroupHint subgroup_smoothability_hint(const ActionScenario& s, Subgroup subgroup);

}  // namespace eqs

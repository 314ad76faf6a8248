#pragma once

// Parameter sweeps over the two template families.

#include "eqsmooth/io.hpp"
#include "eqsmooth/obstruction.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace eqs {

enum class TemplateFamily { z2, klein };

std::optional<TemplateFamily> parse_template(std::string_view s);
std::string to_string(TemplateFamily t);

/// Inclusive integer ranges keyed by parameter name.  The z2 family uses
/// {l, k}; the klein family {l1, l2, k}.
using SweepRanges = std::map<std::string, std::pair<long long, long long>>;

/// Parses "l=3..9,k=0..3"; a bare value "k=1" means 1..1.  Throws
/// Error(malformed_input) on syntax errors.
SweepRanges parse_sweep(std::string_view spec);

struct SweepRow {
  std::vector<std::pair<std::string, long long>> params;  // in family key order
  /// False when the point lies outside the family's smoothable-manifold
  /// range (z2: l >= 3k; klein: l1 + l2 >= 3k); such rows carry no verdict.
  bool in_domain = true;
  std::size_t b = 0;
  Rational k = 0;
  std::optional<Rational> index_twisted;
  Verdict verdict = Verdict::no_obstruction;
  std::vector<SubgroupReport> subgroup_hints;
};

/// Evaluates every grid point on up to `jobs` threads.  Rows come back in
/// lexicographic parameter order regardless of scheduling.  Throws
/// Error(malformed_input) for missing/unknown keys or negative bounds.
std::vector<SweepRow> run_sweep(TemplateFamily family, const SweepRanges& ranges, unsigned jobs);

std::string render_sweep(TemplateFamily family, const std::vector<SweepRow>& rows,
                         OutputFormat format);

}  // namespace eqs

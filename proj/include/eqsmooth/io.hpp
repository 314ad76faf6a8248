#pragma once

// Scenario documents and report rendering.
//
// Scenario schema (JSON, schema_version 1):
//
//   {
//     "schema_version": 1,
//     "group": "Z2" | "Z2xZ2",
//     "summands": [ {"id": "S1", "kind": "s2xs2" | "minus_e8" | "k3" | "custom",
//                    "gram": [[...], ...]  /* custom only, row-major */ } ],
//     "generator1": { "permutation": [["A1", "B1"], ...],
//                     "local": {"S1": "iota0" | "iota0_prime" |
//                               "iota0_compose_iota0_prime" | "identity"},
//                     "overrides": {"S1": {"n_plus": 2, "n_minus": 2}} },
//     "generator2": { ... },                 /* Z2xZ2 only */
//     "composition": { "overrides": {...} }  /* optional, Z2xZ2 only */
//   }

#include "eqsmooth/obstruction.hpp"
#include "eqsmooth/rep_ring.hpp"
#include "eqsmooth/scenario.hpp"

#include <string>
#include <string_view>

namespace eqs {

inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { text, structured };

/// Throws Error(malformed_input) with a message naming the offending field.
ActionScenario parse_scenario(std::string_view json_text);

/// Canonical JSON (2-space indent); parse(serialize(s)) == s.
std::string serialize_scenario(const ActionScenario& s);

/// Hex SHA-256 of the compact canonical serialization.
std::string scenario_digest(const ActionScenario& s);

std::string render_report(const ObstructionReport& r, const ActionScenario& s,
                          OutputFormat format);

std::string render_violations(const std::vector<Violation>& v, OutputFormat format);

/// Homeomorphism invariants, signature profile, invariant-sublattice ranks,
/// fixed sets, and (for Klein template shapes) the stated-vs-constructed
/// total space comparison.
std::string render_invariants(const ActionScenario& s, OutputFormat format);

std::string render_tomdieck(const Integer& degree, const VirtualRepZ4& w, const VirtualRepZ4& v,
                            int element, OutputFormat format);

/// V, W from (m, n, b, k), the traced difference at the generator, and the
/// closed-form comparison 2^(b-k).
std::string render_rep_spaces(std::int64_t m, std::int64_t n, std::int64_t b, std::int64_t k,
                              OutputFormat format);

}  // namespace eqs

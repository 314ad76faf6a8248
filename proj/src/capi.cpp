#include "eqsmooth/eqsmooth.h"

#include "eqsmooth/io.hpp"
#include "eqsmooth/obstruction.hpp"
#include "eqsmooth/scenario.hpp"
#include "eqsmooth/sweep.hpp"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

struct eqs_scenario {
  eqs::ActionScenario value;
};

struct eqs_report {
  eqs::ObstructionReport value;
  eqs::ActionScenario scenario;
};

namespace {

thread_local std::string last_error;

eqs_status fail(eqs_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

eqs_status status_for(eqs::Error::Code code) {
  switch (code) {
    case eqs::Error::Code::malformed_input: return EQS_ERR_PARSE;
    case eqs::Error::Code::validation: return EQS_ERR_VALIDATION;
    case eqs::Error::Code::out_of_scope: return EQS_ERR_DOMAIN;
    case eqs::Error::Code::internal: return EQS_ERR_INTERNAL;
  }
  return EQS_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
eqs_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const eqs::Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(EQS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EQS_ERR_INTERNAL, e.what());
  }
}

eqs_status emit(const std::string& text, char** out) {
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buf) return fail(EQS_ERR_INTERNAL, "out of memory");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  *out = buf;
  return EQS_OK;
}

bool to_format(eqs_format f, eqs::OutputFormat& out) {
  if (f == EQS_FORMAT_TEXT) out = eqs::OutputFormat::text;
  else if (f == EQS_FORMAT_STRUCTURED) out = eqs::OutputFormat::structured;
  else return false;
  return true;
}

eqs_status make_scenario(eqs::ActionScenario s, eqs_scenario** out) {
  *out = new eqs_scenario{std::move(s)};
  return EQS_OK;
}

}  // namespace

extern "C" {

const char* eqs_version(void) { return "1.0.0"; }

const char* eqs_last_error(void) { return last_error.c_str(); }

void eqs_string_free(char* s) { std::free(s); }

eqs_status eqs_scenario_parse(const char* json_text, eqs_scenario** out) {
  if (!json_text || !out) return fail(EQS_ERR_ARGUMENT, "null argument");
  return guarded([&] { return make_scenario(eqs::parse_scenario(json_text), out); });
}

eqs_status eqs_scenario_z2_template(int l, int k, eqs_scenario** out) {
  if (!out) return fail(EQS_ERR_ARGUMENT, "null argument");
  if (l < 0 || k < 0) return fail(EQS_ERR_ARGUMENT, "template parameters must be nonnegative");
  return guarded([&] { return make_scenario(eqs::z2_template(l, k), out); });
}

eqs_status eqs_scenario_klein_template(int l1, int l2, int k, eqs_scenario** out) {
  if (!out) return fail(EQS_ERR_ARGUMENT, "null argument");
  if (l1 < 0 || l2 < 0 || k < 0)
    return fail(EQS_ERR_ARGUMENT, "template parameters must be nonnegative");
  return guarded([&] { return make_scenario(eqs::klein_template(l1, l2, k), out); });
}

eqs_status eqs_scenario_serialize(const eqs_scenario* s, char** out) {
  if (!s || !out) return fail(EQS_ERR_ARGUMENT, "null argument");
  return guarded([&] { return emit(eqs::serialize_scenario(s->value), out); });
}

eqs_status eqs_scenario_validate(const eqs_scenario* s, eqs_format format, char** out) {
  eqs::OutputFormat fmt;
  if (!s || !out) return fail(EQS_ERR_ARGUMENT, "null argument");
  if (!to_format(format, fmt)) return fail(EQS_ERR_ARGUMENT, "unknown format");
  return guarded([&] {
    const auto violations = eqs::validate_scenario(s->value);
    const eqs_status st = emit(eqs::render_violations(violations, fmt), out);
    if (st != EQS_OK || violations.empty()) return st;
    return fail(EQS_ERR_VALIDATION, violations.front().message);
  });
}

void eqs_scenario_free(eqs_scenario* s) { delete s; }

eqs_status eqs_check(const eqs_scenario* s, eqs_report** out) {
  if (!s || !out) return fail(EQS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new eqs_report{eqs::check(s->value), s->value};
    return EQS_OK;
  });
}

int eqs_report_hypotheses_hold(const eqs_report* r) {
  return r && r->value.hypotheses_hold() ? 1 : 0;
}

eqs_verdict eqs_report_verdict(const eqs_report* r) {
  return r && r->value.verdict == eqs::Verdict::nonsmoothable ? EQS_NONSMOOTHABLE
                                                              : EQS_NO_OBSTRUCTION;
}

eqs_status eqs_report_bound(const eqs_report* r, int64_t* b, int64_t* k_num, int64_t* k_den) {
  if (!r || !b || !k_num || !k_den) return fail(EQS_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const eqs::Integer num = boost::multiprecision::numerator(r->value.k);
    const eqs::Integer den = boost::multiprecision::denominator(r->value.k);
    constexpr auto lo = std::numeric_limits<int64_t>::min();
    constexpr auto hi = std::numeric_limits<int64_t>::max();
    if (num < lo || num > hi || den > hi) return fail(EQS_ERR_INTERNAL, "k does not fit in int64");
    *b = static_cast<int64_t>(r->value.b);
    *k_num = static_cast<int64_t>(num);
    *k_den = static_cast<int64_t>(den);
    return EQS_OK;
  });
}

eqs_status eqs_report_render(const eqs_report* r, eqs_format format, char** out) {
  eqs::OutputFormat fmt;
  if (!r || !out) return fail(EQS_ERR_ARGUMENT, "null argument");
  if (!to_format(format, fmt)) return fail(EQS_ERR_ARGUMENT, "unknown format");
  return guarded([&] { return emit(eqs::render_report(r->value, r->scenario, fmt), out); });
}

void eqs_report_free(eqs_report* r) { delete r; }

eqs_status eqs_invariants(const eqs_scenario* s, eqs_format format, char** out) {
  eqs::OutputFormat fmt;
  if (!s || !out) return fail(EQS_ERR_ARGUMENT, "null argument");
  if (!to_format(format, fmt)) return fail(EQS_ERR_ARGUMENT, "unknown format");
  return guarded([&] { return emit(eqs::render_invariants(s->value, fmt), out); });
}

eqs_status eqs_repring_tomdieck(const int64_t w_perp[4], const int64_t v_perp[4], int64_t degree,
                                int element, eqs_format format, char** out) {
  eqs::OutputFormat fmt;
  if (!w_perp || !v_perp || !out) return fail(EQS_ERR_ARGUMENT, "null argument");
  if (!to_format(format, fmt)) return fail(EQS_ERR_ARGUMENT, "unknown format");
  if (element < 0 || element > 3) return fail(EQS_ERR_ARGUMENT, "element must be in 0..3");
  return guarded([&] {
    const eqs::VirtualRepZ4 w({w_perp[0], w_perp[1], w_perp[2], w_perp[3]});
    const eqs::VirtualRepZ4 v({v_perp[0], v_perp[1], v_perp[2], v_perp[3]});
    return emit(eqs::render_tomdieck(eqs::Integer(degree), w, v, element, fmt), out);
  });
}

eqs_status eqs_repring_spaces(int64_t m, int64_t n, int64_t b, int64_t k, eqs_format format,
                              char** out) {
  eqs::OutputFormat fmt;
  if (!out) return fail(EQS_ERR_ARGUMENT, "null argument");
  if (!to_format(format, fmt)) return fail(EQS_ERR_ARGUMENT, "unknown format");
  if (m < 0 || n < 0 || b < 0 || k < 0)
    return fail(EQS_ERR_ARGUMENT, "m, n, b, k must be nonnegative");
  return guarded([&] { return emit(eqs::render_rep_spaces(m, n, b, k, fmt), out); });
}

eqs_status eqs_enumerate(const char* family, const char* ranges, unsigned jobs, eqs_format format,
                         char** out) {
  eqs::OutputFormat fmt;
  if (!family || !ranges || !out) return fail(EQS_ERR_ARGUMENT, "null argument");
  if (!to_format(format, fmt)) return fail(EQS_ERR_ARGUMENT, "unknown format");
  if (jobs == 0) return fail(EQS_ERR_ARGUMENT, "jobs must be positive");
  const auto fam = eqs::parse_template(family);
  if (!fam) return fail(EQS_ERR_ARGUMENT, std::string("unknown template '") + family + "'");
  return guarded([&] {
    const auto rows = eqs::run_sweep(*fam, eqs::parse_sweep(ranges), jobs);
    return emit(eqs::render_sweep(*fam, rows, fmt), out);
  });
}

}  // extern "C"

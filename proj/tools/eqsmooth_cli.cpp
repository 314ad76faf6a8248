// eqsmooth: command-line front end over the C API.
//
// Exit status: 0 when the requested computation ran (whatever the verdict),
// 2 for unreadable or invalid input and unmet hypotheses, 1 for internal
// errors.

#include "eqsmooth/eqsmooth.h"

#include <CLI11.hpp>

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

struct StringDeleter {
  void operator()(char* s) const { eqs_string_free(s); }
};
struct ScenarioDeleter {
  void operator()(eqs_scenario* s) const { eqs_scenario_free(s); }
};
struct ReportDeleter {
  void operator()(eqs_report* r) const { eqs_report_free(r); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;
using OwnedScenario = std::unique_ptr<eqs_scenario, ScenarioDeleter>;
using OwnedReport = std::unique_ptr<eqs_report, ReportDeleter>;

int exit_for(eqs_status st) {
  switch (st) {
    case EQS_OK: return kExitOk;
    case EQS_ERR_INTERNAL: return kExitInternal;
    default: return kExitInput;
  }
}

int report_failure(eqs_status st) {
  std::cerr << "eqsmooth: " << eqs_last_error() << "\n";
  return exit_for(st);
}

eqs_format format_of(const std::string& s) {
  return s == "structured" ? EQS_FORMAT_STRUCTURED : EQS_FORMAT_TEXT;
}

// Reads and validates a scenario; on failure prints diagnostics and returns
// the exit status through `exit_code`.
OwnedScenario load_scenario(const std::string& path, eqs_format fmt, int& exit_code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "eqsmooth: cannot read " << path << "\n";
    exit_code = kExitInput;
    return nullptr;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  eqs_scenario* raw = nullptr;
  if (const eqs_status st = eqs_scenario_parse(buf.str().c_str(), &raw); st != EQS_OK) {
    std::cerr << "eqsmooth: " << path << ": " << eqs_last_error() << "\n";
    exit_code = exit_for(st);
    return nullptr;
  }
  OwnedScenario scenario(raw);

  char* violations = nullptr;
  const eqs_status st = eqs_scenario_validate(scenario.get(), fmt, &violations);
  OwnedString owned(violations);
  if (st != EQS_OK) {
    if (owned) std::cerr << owned.get();
    else std::cerr << "eqsmooth: " << eqs_last_error() << "\n";
    exit_code = exit_for(st);
    return nullptr;
  }
  return scenario;
}

int run_check(const std::string& path, eqs_format fmt) {
  int code = kExitOk;
  OwnedScenario scenario = load_scenario(path, fmt, code);
  if (!scenario) return code;

  eqs_report* raw = nullptr;
  if (const eqs_status st = eqs_check(scenario.get(), &raw); st != EQS_OK) return report_failure(st);
  OwnedReport report(raw);

  char* text = nullptr;
  if (const eqs_status st = eqs_report_render(report.get(), fmt, &text); st != EQS_OK)
    return report_failure(st);
  OwnedString owned(text);
  std::cout << owned.get();
  if (!eqs_report_hypotheses_hold(report.get())) {
    std::cerr << "eqsmooth: hypotheses not satisfied; the bound does not apply\n";
    return kExitInput;
  }
  return kExitOk;
}

int run_invariants(const std::string& path, eqs_format fmt) {
  int code = kExitOk;
  OwnedScenario scenario = load_scenario(path, fmt, code);
  if (!scenario) return code;
  char* text = nullptr;
  if (const eqs_status st = eqs_invariants(scenario.get(), fmt, &text); st != EQS_OK)
    return report_failure(st);
  OwnedString owned(text);
  std::cout << owned.get();
  return kExitOk;
}

int print_result(eqs_status st, char* text) {
  OwnedString owned(text);
  if (st != EQS_OK) return report_failure(st);
  std::cout << owned.get();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant 10/8-type nonsmoothability obstructions for Z2 and Z2xZ2 actions"};
  app.set_version_flag("--version", std::string(eqs_version()));
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));

  std::string input;
  auto* check = app.add_subcommand("check", "Run the obstruction check on a scenario file");
  check->add_option("--input,input", input, "Scenario JSON file")->required();
  check->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));

  auto* invariants =
      app.add_subcommand("invariants", "Print lattice and fixed-set invariants of a scenario");
  invariants->add_option("--input,input", input, "Scenario JSON file")->required();
  invariants->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));

  std::vector<std::int64_t> w_perp, v_perp, spaces;
  std::int64_t degree = 1;
  int element = 1;
  auto* repring = app.add_subcommand(
      "repring", "Evaluate tom Dieck traces in the representation ring of Z/4");
  auto* w_opt = repring->add_option("--w", w_perp, "Multiplicities of C0..C3 in W_perp")
                    ->expected(4)
                    ->delimiter(',');
  auto* v_opt = repring->add_option("--v", v_perp, "Multiplicities of C0..C3 in V_perp")
                    ->expected(4)
                    ->delimiter(',');
  repring->add_option("--degree", degree, "Degree of the restriction to fixed points");
  repring->add_option("--element", element, "Group element a in 0..3")
      ->check(CLI::Range(0, 3));
  auto* spaces_opt =
      repring->add_option("--spaces", spaces, "m,n,b,k: build V, W and trace at the generator")
          ->expected(4)
          ->delimiter(',');
  spaces_opt->excludes(w_opt)->excludes(v_opt);
  w_opt->needs(v_opt);
  v_opt->needs(w_opt);
  repring->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));

  std::string family = "z2", sweep;
  unsigned jobs = 1;
  auto* enumerate = app.add_subcommand("enumerate", "Sweep a template family over a grid");
  enumerate->add_option("--template", family, "Template family")
      ->check(CLI::IsMember({"z2", "klein"}));
  enumerate->add_option("--sweep", sweep, "Ranges, e.g. l=3..9,k=0..3")->required();
  enumerate->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  enumerate->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  const eqs_format fmt = format_of(format);
  if (check->parsed()) return run_check(input, fmt);
  if (invariants->parsed()) return run_invariants(input, fmt);
  if (repring->parsed()) {
    char* text = nullptr;
    if (!spaces.empty()) {
      const eqs_status st =
          eqs_repring_spaces(spaces[0], spaces[1], spaces[2], spaces[3], fmt, &text);
      return print_result(st, text);
    }
    if (w_perp.empty()) {
      std::cerr << "eqsmooth: repring needs --w and --v, or --spaces\n";
      return kExitInput;
    }
    const eqs_status st =
        eqs_repring_tomdieck(w_perp.data(), v_perp.data(), degree, element, fmt, &text);
    return print_result(st, text);
  }
  if (enumerate->parsed()) {
    char* text = nullptr;
    const eqs_status st = eqs_enumerate(family.c_str(), sweep.c_str(), jobs, fmt, &text);
    return print_result(st, text);
  }
  return kExitInternal;
}

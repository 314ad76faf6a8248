#include "eqsmooth/io.hpp"
#include "eqsmooth/sweep.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace eqs;
using Json = nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string parse_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    CHECK(e.code() == Error::Code::malformed_input);
    return e.what();
  }
  FAIL("document was accepted");
  return {};
}

bool mentions(const std::string& message, const std::string& needle) {
  return message.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("bundled scenarios match the templates") {
  const std::string dir = EQSMOOTH_DATA_DIR;
  CHECK(parse_scenario(read_file(dir + "/z2_l3_k1.json")) == z2_template(3, 1));
  CHECK(parse_scenario(read_file(dir + "/klein_l3_l3_k1.json")) == klein_template(3, 3, 1));
  const auto bad = parse_scenario(read_file(dir + "/invalid_fixed_e8.json"));
  REQUIRE(validate_scenario(bad).size() == 1);
  CHECK(validate_scenario(bad)[0].code == "fixed_rigid_summand");
}

TEST_CASE("round trip") {
  std::vector<ActionScenario> cases = {z2_template(0, 0), z2_template(3, 2), klein_template(2, 3, 1)};
  ActionScenario c = klein_template(1, 1, 0);
  c.composition_overrides["S0"] = {3, 1};
  c.summands.push_back({"C", SummandKind::custom, IntegerLattice(IntMatrix{{2, 1}, {1, 2}})});
  c.summands.push_back({"D", SummandKind::custom, IntegerLattice(IntMatrix{{2, 1}, {1, 2}})});
  c.gen1.swaps.emplace_back("C", "D");
  c.gen2->swaps.emplace_back("C", "D");
  cases.push_back(c);
  ActionScenario big = z2_template(1, 0);
  IntMatrix g{{0}};
  g(0, 0) = Integer("-123456789012345678901234567890");
  big.summands.push_back({"X", SummandKind::custom, IntegerLattice(g)});
  cases.push_back(big);

  for (const auto& s : cases) {
    const std::string text = serialize_scenario(s);
    const ActionScenario back = parse_scenario(text);
    CHECK(back == s);
    CHECK(serialize_scenario(back) == text);
    CHECK(scenario_digest(back) == scenario_digest(s));
  }
  CHECK(scenario_digest(z2_template(3, 1)) != scenario_digest(z2_template(4, 1)));
  CHECK(scenario_digest(z2_template(3, 1)).size() == 64);
}

TEST_CASE("parse errors name the field") {
  const std::string ok = serialize_scenario(z2_template(1, 1));
  auto edit = [&](auto&& f) {
    Json j = Json::parse(ok);
    f(j);
    return j.dump();
  };
  CHECK(mentions(parse_error("{"), "not valid JSON"));
  CHECK(mentions(parse_error("[]"), "(root)"));
  CHECK(mentions(parse_error(edit([](Json& j) { j.erase("schema_version"); })), "schema_version"));
  CHECK(mentions(parse_error(edit([](Json& j) { j["schema_version"] = 7; })), "schema_version"));
  CHECK(mentions(parse_error(edit([](Json& j) { j["group"] = "Z3"; })), "group"));
  CHECK(mentions(parse_error(edit([](Json& j) { j["summands"][2]["kind"] = "foo"; })),
                 "summands[2].kind"));
  CHECK(mentions(parse_error(edit([](Json& j) { j["summands"][0]["colour"] = 1; })),
                 "summands[0].colour"));
  CHECK(mentions(parse_error(edit([](Json& j) { j["generator1"]["permutation"][0] = {"A1"}; })),
                 "generator1.permutation[0]"));
  CHECK(mentions(parse_error(edit([](Json& j) { j["generator1"]["local"]["S1"] = "spin"; })),
                 "generator1.local.S1"));
  CHECK(mentions(parse_error(edit([](Json& j) { j["extra"] = true; })), "extra"));
  CHECK(mentions(parse_error(edit([](Json& j) {
                   j["summands"][0] = {{"id", "S1"}, {"kind", "custom"}, {"gram", {{1, 2}, {3, 4}}}};
                 })),
                 "summands[0].gram"));
}

TEST_CASE("structured report fields") {
  const ActionScenario s = klein_template(3, 3, 1);
  const Json j = Json::parse(render_report(check(s), s, OutputFormat::structured));
  for (const char* key : {"schema_version", "scenario_digest", "theorem", "hypotheses", "b", "k",
                          "trace", "verdict", "fixed_sets", "subgroup_hints"})
    CHECK(j.contains(key));
  CHECK(j["scenario_digest"] == scenario_digest(s));
  CHECK(j["verdict"] == "nonsmoothable");
  CHECK(j["b"] == 0);
  CHECK(j["k"] == "1");
  CHECK(j["fixed_sets"].size() == 3);
  CHECK(j["subgroup_hints"].size() == 3);

  const std::string text = render_report(check(s), s, OutputFormat::text);
  CHECK(mentions(text, "nonsmoothable"));
}

TEST_CASE("invariants report flags the Klein total space") {
  const Json j = Json::parse(render_invariants(klein_template(3, 3, 1), OutputFormat::structured));
  REQUIRE(j.contains("klein_total_space"));
  CHECK(j["klein_total_space"]["mismatch"] == true);
  const Json z = Json::parse(render_invariants(z2_template(3, 1), OutputFormat::structured));
  CHECK_FALSE(z.contains("klein_total_space"));
}

TEST_CASE("sweep ranges") {
  const auto r = parse_sweep("l=3..9,k=0..3");
  CHECK(r.at("l") == std::make_pair(3LL, 9LL));
  CHECK(r.at("k") == std::make_pair(0LL, 3LL));
  CHECK(parse_sweep("k=2").at("k") == std::make_pair(2LL, 2LL));
  CHECK_THROWS_AS(parse_sweep("l=3..x"), Error);
  CHECK_THROWS_AS(parse_sweep("l"), Error);
  CHECK_THROWS_AS(parse_sweep("l=1,l=2"), Error);
  CHECK_THROWS_AS(run_sweep(TemplateFamily::z2, parse_sweep("l=1..2"), 1), Error);
  CHECK_THROWS_AS(run_sweep(TemplateFamily::z2, parse_sweep("l=1,k=1,q=2"), 1), Error);
  CHECK_THROWS_AS(run_sweep(TemplateFamily::klein, parse_sweep("l=1,k=1"), 1), Error);
  CHECK(run_sweep(TemplateFamily::z2, parse_sweep("l=5..4,k=0"), 1).empty());
}

TEST_CASE("sweep output is independent of the thread count") {
  const auto ranges = parse_sweep("l1=0..4,l2=0..4,k=0..2");
  const auto one = render_sweep(TemplateFamily::klein, run_sweep(TemplateFamily::klein, ranges, 1),
                                OutputFormat::structured);
  for (unsigned jobs : {2u, 3u, 8u, 64u}) {
    const auto many = render_sweep(TemplateFamily::klein,
                                   run_sweep(TemplateFamily::klein, ranges, jobs),
                                   OutputFormat::structured);
    CHECK(many == one);
  }
}

TEST_CASE("z2 sweep verdicts") {
  const auto rows = run_sweep(TemplateFamily::z2, parse_sweep("l=0..9,k=0..3"), 4);
  CHECK(rows.size() == 40);
  for (const auto& row : rows) {
    const long long l = row.params[0].second, k = row.params[1].second;
    CHECK(row.in_domain == (l >= 3 * k));
    if (row.in_domain && l > 0) CHECK((row.verdict == Verdict::nonsmoothable) == (k >= 1));
  }
}

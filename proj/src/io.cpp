#include "eqsmooth/io.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <limits>
#include <sstream>

namespace eqs {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
  throw Error(Error::Code::malformed_input, "field " + path + ": " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) bad_field(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) bad_field(path + "." + key, "missing");
  return *it;
}

std::string require_string(const Json& v, const std::string& path) {
  if (!v.is_string()) bad_field(path, "expected a string");
  return v.get<std::string>();
}

long long require_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) bad_field(path, "expected an integer");
  return v.get<long long>();
}

Integer parse_integer(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Integer(v.get<long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos)
      return Integer(s);
  }
  bad_field(path, "expected an integer");
}

Json integer_json(const Integer& z) {
  if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(z));
  return Json(z.str());
}

void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed,
                         const std::string& path) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) bad_field(path + "." + key, "unknown field");
  }
}

std::map<std::string, PointSigns> parse_overrides(const Json& v, const std::string& path) {
  if (!v.is_object()) bad_field(path, "expected an object");
  std::map<std::string, PointSigns> out;
  for (const auto& [id, counts] : v.items()) {
    const std::string p = path + "." + id;
    reject_unknown_keys(counts, {"n_plus", "n_minus"}, p);
    out[id] = {require_int(require(counts, "n_plus", p), p + ".n_plus"),
               require_int(require(counts, "n_minus", p), p + ".n_minus")};
  }
  return out;
}

GeneratorAction parse_generator(const Json& v, const std::string& path) {
  if (!v.is_object()) bad_field(path, "expected an object");
  reject_unknown_keys(v, {"permutation", "local", "overrides"}, path);
  GeneratorAction g;
  if (const auto it = v.find("permutation"); it != v.end()) {
    if (!it->is_array()) bad_field(path + ".permutation", "expected an array of id pairs");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& pair = (*it)[i];
      const std::string p = path + ".permutation[" + std::to_string(i) + "]";
      if (!pair.is_array() || pair.size() != 2) bad_field(p, "expected a pair of ids");
      g.swaps.emplace_back(require_string(pair[0], p + "[0]"), require_string(pair[1], p + "[1]"));
    }
  }
  if (const auto it = v.find("local"); it != v.end()) {
    if (!it->is_object()) bad_field(path + ".local", "expected an object");
    for (const auto& [id, label] : it->items()) {
      const std::string p = path + ".local." + id;
      const auto l = parse_local_involution(require_string(label, p));
      if (!l) bad_field(p, "unknown local involution '" + label.get<std::string>() + "'");
      g.local[id] = *l;
    }
  }
  if (const auto it = v.find("overrides"); it != v.end())
    g.overrides = parse_overrides(*it, path + ".overrides");
  return g;
}

Json overrides_json(const std::map<std::string, PointSigns>& ov) {
  Json out = Json::object();
  for (const auto& [id, s] : ov) out[id] = {{"n_plus", s.n_plus}, {"n_minus", s.n_minus}};
  return out;
}

Json generator_json(const GeneratorAction& g) {
  Json perm = Json::array();
  for (const auto& [a, b] : g.swaps) perm.push_back(Json::array({a, b}));
  Json local = Json::object();
  for (const auto& [id, l] : g.local) local[id] = to_string(l);
  Json out = {{"permutation", perm}, {"local", local}};
  if (!g.overrides.empty()) out["overrides"] = overrides_json(g.overrides);
  return out;
}

Json scenario_json(const ActionScenario& s) {
  Json summands = Json::array();
  for (const Summand& sm : s.summands) {
    Json item = {{"id", sm.id}, {"kind", to_string(sm.kind)}};
    if (sm.custom) {
      Json gram = Json::array();
      const IntMatrix& g = sm.custom->gram();
      for (std::size_t r = 0; r < g.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < g.cols(); ++c) row.push_back(integer_json(g(r, c)));
        gram.push_back(row);
      }
      item["gram"] = gram;
    }
    summands.push_back(item);
  }
  Json out = {{"schema_version", kSchemaVersion},
              {"group", to_string(s.group)},
              {"summands", summands},
              {"generator1", generator_json(s.gen1)}};
  if (s.gen2) out["generator2"] = generator_json(*s.gen2);
  if (!s.composition_overrides.empty())
    out["composition"] = {{"overrides", overrides_json(s.composition_overrides)}};
  return out;
}

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error(Error::Code::internal, "SHA-256 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Json rational_json(const Rational& q) { return to_string(q); }

Json fixed_set_json(const ElementReport& e) {
  Json comps = Json::array();
  for (const auto& c : e.fixed_set.components)
    comps.push_back({{"dimension", c.dimension}, {"count", c.count}});
  Json out = {{"element", to_string(e.element)}, {"components", comps}};
  out["n_plus"] = e.fixed_set.n_plus ? Json(*e.fixed_set.n_plus) : Json(nullptr);
  out["n_minus"] = e.fixed_set.n_minus ? Json(*e.fixed_set.n_minus) : Json(nullptr);
  out["parity"] = e.parity ? Json(to_string(*e.parity)) : Json("indeterminate");
  out["mixed_dimensions"] = e.mixed_dimensions;
  out["index"] = e.index ? rational_json(*e.index) : Json(nullptr);
  return out;
}

std::string describe_fixed_set(const FixedSetData& f) {
  if (f.components.empty()) return "empty";
  std::string out;
  for (const auto& c : f.components) {
    if (!out.empty()) out += ", ";
    out += std::to_string(c.count) + (c.dimension == 0 ? " isolated point(s)" : " surface(s)");
  }
  if (f.n_plus) out += " [n+ = " + std::to_string(*f.n_plus) + ", n- = " +
                       std::to_string(*f.n_minus) + "]";
  return out;
}

std::string bound_formula(Bound b) {
  return b == Bound::z2_odd_involution ? "b_+^I >= -sigma/16"
                                       : "b_+^<I1,I2> >= -sigma/32 + |index_{I1 I2} D|/8";
}

std::string rep_string(const VirtualRepZ4& r) {
  std::string out;
  for (int c = 0; c < 4; ++c) {
    const auto m = r.mult()[c];
    if (m == 0) continue;
    if (!out.empty()) out += m < 0 ? " - " : " + ";
    else if (m < 0) out += "-";
    const auto mag = m < 0 ? -m : m;
    if (mag != 1) out += std::to_string(mag) + "*";
    out += "C" + std::to_string(c);
  }
  return out.empty() ? "0" : out;
}

Json rep_json(const VirtualRepZ4& r) {
  return Json::array({r.mult()[0], r.mult()[1], r.mult()[2], r.mult()[3]});
}

Json gaussian_json(const GaussianRational& z) {
  return {{"re", to_string(z.re)}, {"im", to_string(z.im)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

ActionScenario parse_scenario(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Error::Code::malformed_input, std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad_field("(root)", "expected an object");
  reject_unknown_keys(doc, {"schema_version", "group", "summands", "generator1", "generator2",
                            "composition"},
                      "(root)");

  const long long version = require_int(require(doc, "schema_version", "(root)"), "schema_version");
  if (version != kSchemaVersion)
    bad_field("schema_version", "unsupported version " + std::to_string(version));

  ActionScenario s;
  const std::string group = require_string(require(doc, "group", "(root)"), "group");
  const auto g = parse_group(group);
  if (!g) bad_field("group", "unknown group '" + group + "' (expected Z2 or Z2xZ2)");
  s.group = *g;

  const Json& summands = require(doc, "summands", "(root)");
  if (!summands.is_array()) bad_field("summands", "expected an array");
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const std::string p = "summands[" + std::to_string(i) + "]";
    const Json& item = summands[i];
    reject_unknown_keys(item, {"id", "kind", "gram"}, p);
    Summand sm;
    sm.id = require_string(require(item, "id", p), p + ".id");
    const std::string kind = require_string(require(item, "kind", p), p + ".kind");
    const auto k = parse_summand_kind(kind);
    if (!k) bad_field(p + ".kind", "unknown kind '" + kind + "'");
    sm.kind = *k;
    if (const auto it = item.find("gram"); it != item.end()) {
      if (!it->is_array()) bad_field(p + ".gram", "expected an array of rows");
      const std::size_t n = it->size();
      IntMatrix gram(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        const Json& row = (*it)[r];
        const std::string rp = p + ".gram[" + std::to_string(r) + "]";
        if (!row.is_array() || row.size() != n) bad_field(rp, "expected a row of length " + std::to_string(n));
        for (std::size_t c = 0; c < n; ++c)
          gram(r, c) = parse_integer(row[c], rp + "[" + std::to_string(c) + "]");
      }
      try {
        sm.custom = IntegerLattice(std::move(gram));
      } catch (const Error& e) {
        bad_field(p + ".gram", e.what());
      }
    }
    s.summands.push_back(std::move(sm));
  }

  s.gen1 = parse_generator(require(doc, "generator1", "(root)"), "generator1");
  if (const auto it = doc.find("generator2"); it != doc.end())
    s.gen2 = parse_generator(*it, "generator2");
  if (const auto it = doc.find("composition"); it != doc.end()) {
    reject_unknown_keys(*it, {"overrides"}, "composition");
    if (const auto ov = it->find("overrides"); ov != it->end())
      s.composition_overrides = parse_overrides(*ov, "composition.overrides");
  }
  return s;
}

std::string serialize_scenario(const ActionScenario& s) { return dump(scenario_json(s)); }

std::string scenario_digest(const ActionScenario& s) {
  return sha256_hex(scenario_json(s).dump());
}

std::string render_report(const ObstructionReport& r, const ActionScenario& s,
                          OutputFormat format) {
  if (format == OutputFormat::structured) {
    Json hyps = Json::array();
    for (const auto& h : r.hypotheses)
      hyps.push_back({{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
    Json fixed = Json::array();
    for (const auto& e : r.elements) fixed.push_back(fixed_set_json(e));
    Json hints = Json::array();
    for (const auto& h : r.subgroup_hints)
      hints.push_back({{"subgroup", to_string(h.subgroup)}, {"hint", to_string(h.hint)}});
    Json trace = nullptr;
    if (r.trace)
      trace = {{"value", rational_json(r.trace->value)},
               {"algebraic_integer", r.trace->is_algebraic_integer}};
    Json out = {{"schema_version", kSchemaVersion},
                {"scenario_digest", scenario_digest(s)},
                {"theorem", to_string(r.bound)},
                {"invariants",
                 {{"b2", r.invariants.b2},
                  {"signature", r.invariants.signature},
                  {"even", r.invariants.even}}},
                {"hypotheses", hyps},
                {"b", r.b},
                {"k", rational_json(r.k)},
                {"index_twisted", r.index_twisted ? rational_json(*r.index_twisted) : Json(nullptr)},
                {"trace", trace},
                {"verdict", to_string(r.verdict)},
                {"fixed_sets", fixed},
                {"subgroup_hints", hints}};
    return dump(out);
  }

  std::ostringstream os;
  os << "bound:      " << to_string(r.bound) << "  (" << bound_formula(r.bound) << ")\n";
  os << "scenario:   sha256:" << scenario_digest(s) << "\n";
  os << "manifold:   b2 = " << r.invariants.b2 << ", signature = " << r.invariants.signature
     << ", " << (r.invariants.even ? "even" : "odd") << "\n";
  os << "hypotheses:\n";
  for (const auto& h : r.hypotheses)
    os << "  [" << (h.holds ? "pass" : "FAIL") << "] " << h.name << ": " << h.detail << "\n";
  os << "fixed sets:\n";
  for (const auto& e : r.elements) {
    os << "  " << to_string(e.element) << ": " << describe_fixed_set(e.fixed_set) << "; parity "
       << (e.parity ? to_string(*e.parity) : std::string("indeterminate"));
    if (e.index) os << "; index " << to_string(*e.index);
    os << "\n";
  }
  os << "b = " << r.b << "\n";
  os << "k = " << to_string(r.k) << "\n";
  if (r.index_twisted) os << "index_{I1 I2} D = " << to_string(*r.index_twisted) << "\n";
  if (r.trace) {
    os << "trace 2^(b-k) = " << to_string(r.trace->value) << " (algebraic integer: "
       << (r.trace->is_algebraic_integer ? "yes" : "no") << ")\n";
  } else {
    os << "trace 2^(b-k) = n/a (k not integral)\n";
  }
  for (const auto& h : r.subgroup_hints)
    os << "subgroup " << to_string(h.subgroup) << ": " << to_string(h.hint) << "\n";
  os << "verdict: " << to_string(r.verdict) << "\n";
  return os.str();
}

std::string render_violations(const std::vector<Violation>& v, OutputFormat format) {
  if (format == OutputFormat::structured) {
    Json arr = Json::array();
    for (const auto& x : v)
      arr.push_back({{"code", x.code}, {"subject", x.subject}, {"message", x.message}});
    return dump({{"schema_version", kSchemaVersion}, {"violations", arr}});
  }
  std::string out;
  for (const auto& x : v) out += "violation [" + x.code + "] " + x.message + "\n";
  return out;
}

std::string render_invariants(const ActionScenario& s, OutputFormat format) {
  require_valid(s);
  const IntegerLattice l = total_lattice(s);
  const SignatureProfile prof = signature_profile(l);
  const HomeoInvariants inv = total_invariants(s);

  std::vector<LatticeIsometry> ops;
  Json per_element = Json::array();
  std::ostringstream os;
  os << "b2 = " << inv.b2 << ", signature = " << inv.signature << ", "
     << (inv.even ? "even" : "odd") << "\n";
  os << "b_plus = " << prof.b_plus << ", b_minus = " << prof.b_minus << ", b_zero = " << prof.b_zero
     << "\n";
  for (GroupElement g : nonidentity_elements(s.group)) {
    const LatticeIsometry op = induced_cohomology_action(s, g);
    const InvariantSublattice sub = invariant_sublattice(std::span(&op, 1));
    const SignatureProfile sp = signature_profile(sub.restricted_gram);
    const FixedSetData f = fixed_set_data(s, g);
    if (g != GroupElement::product) ops.push_back(op);
    per_element.push_back({{"element", to_string(g)},
                           {"invariant_rank", sub.rank()},
                           {"b_plus_invariant", sp.b_plus},
                           {"fixed_set", describe_fixed_set(f)}});
    os << to_string(g) << ": invariant rank " << sub.rank() << ", b_plus " << sp.b_plus
       << ", fixed set " << describe_fixed_set(f) << "\n";
  }
  const InvariantSublattice joint = invariant_sublattice(ops);
  const std::size_t joint_b_plus = signature_profile(joint.restricted_gram).b_plus;
  os << "joint invariant rank " << joint.rank() << ", b_plus " << joint_b_plus << "\n";

  Json out = {{"schema_version", kSchemaVersion},
              {"scenario_digest", scenario_digest(s)},
              {"b2", inv.b2},
              {"signature", inv.signature},
              {"even", inv.even},
              {"b_plus", prof.b_plus},
              {"b_minus", prof.b_minus},
              {"b_zero", prof.b_zero},
              {"elements", per_element},
              {"joint_invariant_rank", joint.rank()},
              {"joint_b_plus", joint_b_plus}};

  if (const auto shape = match_klein_template(s)) {
    const auto c = klein_total_space_check(shape->l1, shape->l2, shape->k);
    auto inv_json = [](const HomeoInvariants& h) {
      return Json{{"b2", h.b2}, {"signature", h.signature}, {"even", h.even}};
    };
    out["klein_total_space"] = {{"l1", shape->l1},
                                {"l2", shape->l2},
                                {"k", shape->k},
                                {"stated", inv_json(c.stated)},
                                {"constructed", inv_json(c.constructed)},
                                {"two_k_k3_variant", inv_json(c.two_k_k3_variant)},
                                {"mismatch", c.mismatch}};
    os << "klein template l1=" << shape->l1 << " l2=" << shape->l2 << " k=" << shape->k << ":\n"
       << "  stated (2l1+2l2+1-6k)(S2xS2) # 4k(K3): b2 = " << c.stated.b2
       << ", signature = " << c.stated.signature << "\n"
       << "  constructed Y # 4k(-E8):              b2 = " << c.constructed.b2
       << ", signature = " << c.constructed.signature << "\n"
       << "  (2l1+2l2+1-6k)(S2xS2) # 2k(K3):       b2 = " << c.two_k_k3_variant.b2
       << ", signature = " << c.two_k_k3_variant.signature << "\n"
       << "  mismatch: " << (c.mismatch ? "yes" : "no") << "\n";
  }
  return format == OutputFormat::structured ? dump(out) : os.str();
}

std::string render_tomdieck(const Integer& degree, const VirtualRepZ4& w, const VirtualRepZ4& v,
                            int element, OutputFormat format) {
  const GaussianRational t = tomdieck_trace(degree, w, v, element);
  if (format == OutputFormat::structured) {
    return dump({{"schema_version", kSchemaVersion},
                 {"degree", integer_json(degree)},
                 {"w_perp", rep_json(w)},
                 {"v_perp", rep_json(v)},
                 {"element", element},
                 {"trace", gaussian_json(t)},
                 {"algebraic_integer", t.is_gaussian_integer()}});
  }
  std::ostringstream os;
  os << "tr_" << element << "(alpha) = " << degree << " * tr(lambda_-1((" << rep_string(w)
     << ") - (" << rep_string(v) << "))) = " << to_string(t) << "\n";
  os << "algebraic integer: " << (t.is_gaussian_integer() ? "yes" : "no") << "\n";
  return os.str();
}

std::string render_rep_spaces(std::int64_t m, std::int64_t n, std::int64_t b, std::int64_t k,
                              OutputFormat format) {
  const RepSpaces sp = rep_spaces_from_data(m, n, b, k);
  const GaussianRational t = tomdieck_trace(1, sp.w, sp.v, 1);
  const TraceIntegrality closed = bk_trace_and_integrality(b, k);
  const bool agree = t == GaussianRational(closed.value);
  if (format == OutputFormat::structured) {
    return dump({{"schema_version", kSchemaVersion},
                 {"m", m}, {"n", n}, {"b", b}, {"k", k},
                 {"V", rep_json(sp.v)},
                 {"W", rep_json(sp.w)},
                 {"trace", gaussian_json(t)},
                 {"closed_form", rational_json(closed.value)},
                 {"agree", agree},
                 {"algebraic_integer", closed.is_algebraic_integer}});
  }
  std::ostringstream os;
  os << "V_C = " << rep_string(sp.v) << "\n";
  os << "W_C = " << rep_string(sp.w) << "\n";
  os << "tr_j(lambda_-1(W - V)) = " << to_string(t) << "\n";
  os << "2^(b-k) = " << to_string(closed.value) << (agree ? " (agrees)" : " (DISAGREES)") << "\n";
  os << "algebraic integer: " << (closed.is_algebraic_integer ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace eqs

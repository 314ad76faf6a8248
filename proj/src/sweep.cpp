#include "eqsmooth/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace eqs {

using Json = nlohmann::ordered_json;

namespace {

std::vector<std::string> family_keys(TemplateFamily f) {
  if (f == TemplateFamily::z2) return {"l", "k"};
  return {"l1", "l2", "k"};
}

long long parse_number(std::string_view s, std::string_view context) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(Error::Code::malformed_input,
                "sweep: '" + std::string(s) + "' in '" + std::string(context) +
                    "' is not an integer");
  }
  return v;
}

SweepRow evaluate(TemplateFamily family, const std::vector<std::pair<std::string, long long>>& p) {
  SweepRow row;
  row.params = p;
  const int k = static_cast<int>(p.back().second);
  ActionScenario s;
  if (family == TemplateFamily::z2) {
    const int l = static_cast<int>(p[0].second);
    row.in_domain = l >= 3 * k;
    if (!row.in_domain) return row;
    s = z2_template(l, k);
  } else {
    const int l1 = static_cast<int>(p[0].second), l2 = static_cast<int>(p[1].second);
    row.in_domain = l1 + l2 >= 3 * k;
    if (!row.in_domain) return row;
    s = klein_template(l1, l2, k);
  }
  const ObstructionReport r = check(s);
  row.b = r.b;
  row.k = r.k;
  row.index_twisted = r.index_twisted;
  row.verdict = r.verdict;
  row.subgroup_hints = r.subgroup_hints;
  return row;
}

}  // namespace

std::optional<TemplateFamily> parse_template(std::string_view s) {
  if (s == "z2") return TemplateFamily::z2;
  if (s == "klein") return TemplateFamily::klein;
  return std::nullopt;
}

std::string to_string(TemplateFamily t) { return t == TemplateFamily::z2 ? "z2" : "klein"; }

SweepRanges parse_sweep(std::string_view spec) {
  SweepRanges out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = spec.find(',', pos);
    const std::string_view item =
        spec.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(Error::Code::malformed_input,
                  "sweep: expected key=a..b, got '" + std::string(item) + "'");
    }
    const std::string key(item.substr(0, eq));
    const std::string_view range = item.substr(eq + 1);
    const std::size_t dots = range.find("..");
    long long lo = 0, hi = 0;
    if (dots == std::string_view::npos) {
      lo = hi = parse_number(range, item);
    } else {
      lo = parse_number(range.substr(0, dots), item);
      hi = parse_number(range.substr(dots + 2), item);
    }
    if (!out.emplace(key, std::make_pair(lo, hi)).second)
      throw Error(Error::Code::malformed_input, "sweep: key '" + key + "' given twice");
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<SweepRow> run_sweep(TemplateFamily family, const SweepRanges& ranges, unsigned jobs) {
  const auto keys = family_keys(family);
  for (const auto& [key, _] : ranges) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw Error(Error::Code::malformed_input,
                  "sweep: key '" + key + "' does not belong to template " + to_string(family));
  }
  std::vector<std::pair<long long, long long>> bounds;
  for (const auto& key : keys) {
    const auto it = ranges.find(key);
    if (it == ranges.end())
      throw Error(Error::Code::malformed_input,
                  "sweep: template " + to_string(family) + " needs a range for '" + key + "'");
    if (it->second.first < 0)
      throw Error(Error::Code::malformed_input, "sweep: '" + key + "' must be nonnegative");
    bounds.push_back(it->second);
  }

  // Lexicographic grid; an empty range on any axis empties the grid.
  std::vector<std::vector<std::pair<std::string, long long>>> grid{{}};
  for (std::size_t a = 0; a < keys.size(); ++a) {
    std::vector<std::vector<std::pair<std::string, long long>>> next;
    for (const auto& prefix : grid) {
      for (long long v = bounds[a].first; v <= bounds[a].second; ++v) {
        auto p = prefix;
        p.emplace_back(keys[a], v);
        next.push_back(std::move(p));
      }
    }
    grid = std::move(next);
  }

  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        rows[i] = evaluate(family, grid[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(grid.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string render_sweep(TemplateFamily family, const std::vector<SweepRow>& rows,
                         OutputFormat format) {
  std::size_t nonsmoothable = 0, no_obstruction = 0, skipped = 0;
  for (const auto& r : rows) {
    if (!r.in_domain) ++skipped;
    else if (r.verdict == Verdict::nonsmoothable) ++nonsmoothable;
    else ++no_obstruction;
  }

  if (format == OutputFormat::structured) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json params = Json::object();
      for (const auto& [key, v] : r.params) params[key] = v;
      Json item = {{"params", params}, {"in_domain", r.in_domain}};
      if (r.in_domain) {
        item["b"] = r.b;
        item["k"] = to_string(r.k);
        item["index_twisted"] = r.index_twisted ? Json(to_string(*r.index_twisted)) : Json(nullptr);
        item["verdict"] = to_string(r.verdict);
        Json hints = Json::array();
        for (const auto& h : r.subgroup_hints)
          hints.push_back({{"subgroup", to_string(h.subgroup)}, {"hint", to_string(h.hint)}});
        item["subgroup_hints"] = hints;
      } else {
        item["verdict"] = "skipped";
      }
      arr.push_back(item);
    }
    Json out = {{"schema_version", kSchemaVersion},
                {"template", to_string(family)},
                {"rows", arr},
                {"summary",
                 {{"points", rows.size()},
                  {"nonsmoothable", nonsmoothable},
                  {"no_obstruction", no_obstruction},
                  {"skipped", skipped}}}};
    return out.dump(2) + "\n";
  }

  std::ostringstream os;
  for (const auto& r : rows) {
    for (const auto& [key, v] : r.params) os << key << "=" << v << " ";
    if (!r.in_domain) {
      os << "skipped (outside template range)\n";
      continue;
    }
    os << "b=" << r.b << " bound=" << to_string(r.k);
    if (r.index_twisted) os << " index=" << to_string(*r.index_twisted);
    os << " verdict=" << to_string(r.verdict);
    for (const auto& h : r.subgroup_hints)
      os << " " << to_string(h.subgroup) << "=" << to_string(h.hint);
    os << "\n";
  }
  os << "summary: points=" << rows.size() << " nonsmoothable=" << nonsmoothable
     << " no_obstruction=" << no_obstruction << " skipped=" << skipped << "\n";
  return os.str();
}

}  // namespace eqs

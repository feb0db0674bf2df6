#include "igame/scenario_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "igame/sweep.hpp"

namespace igame {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line << ": " << msg;
  throw std::invalid_argument(os.str());
}

long long parse_int(int line, const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    long long n = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return n;
  } catch (const std::exception&) {
    fail(line, "value of '" + key + "' is not an integer: '" + v + "'");
  }
}

// key = value lines, '#' comments, duplicates rejected. Returns insertion
// order-independent map plus the line each key appeared on.
std::map<std::string, std::pair<std::string, int>> parse_kv(
    const std::string& text) {
  std::map<std::string, std::pair<std::string, int>> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (size_t hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::string t = trim(raw);
    if (t.empty()) continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (value.empty()) fail(line, "empty value for '" + key + "'");
    if (out.count(key)) fail(line, "duplicate key '" + key + "'");
    out[key] = {value, line};
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::optional<SeparationMode> parse_separation(const std::string& text) {
  if (text == "fcfs") return SeparationMode::fcfs_compatible;
  if (text == "eq4") return SeparationMode::bare_crossing;
  return std::nullopt;
}

std::optional<MechanismSource> parse_source(const std::string& text) {
  if (text == "table1") return MechanismSource::table1;
  if (text == "oracle") return MechanismSource::oracle_selection;
  return std::nullopt;
}

ScenarioFileData parse_scenario_text(const std::string& text) {
  auto kv = parse_kv(text);

  static const char* kRequired[] = {"delta", "theta_min", "theta_max", "dt",
                                    "e1",    "d1",        "e2",        "d2"};
  static const char* kOptional[] = {"cost", "separation", "source"};

  for (const auto& [key, value] : kv) {
    bool known = false;
    for (const char* k : kRequired) known |= key == k;
    for (const char* k : kOptional) known |= key == k;
    if (!known) fail(value.second, "unknown key '" + key + "'");
  }
  for (const char* k : kRequired)
    if (!kv.count(k))
      throw std::invalid_argument(std::string("missing required key '") + k +
                                  "'");

  auto intval = [&](const char* k) {
    const auto& [v, line] = kv.at(k);
    return parse_int(line, k, v);
  };

  TimeGrid grid(intval("delta"), intval("theta_min"), intval("theta_max"));
  long long dt = intval("dt");
  AgentProfile a1{GridTime::from_ticks(intval("e1")),
                  GridTime::from_ticks(intval("d1"))};
  AgentProfile a2{GridTime::from_ticks(intval("e2")),
                  GridTime::from_ticks(intval("d2"))};

  ScenarioFileData data{Scenario(grid, dt * kHalfTicksPerTick, a1, a2),
                        std::nullopt, std::nullopt, std::nullopt};

  if (auto it = kv.find("cost"); it != kv.end()) {
    data.cost = CostModel::parse(it->second.first);
    if (!data.cost)
      fail(it->second.second, "unknown cost model '" + it->second.first + "'");
  }
  if (auto it = kv.find("separation"); it != kv.end()) {
    data.separation = parse_separation(it->second.first);
    if (!data.separation)
      fail(it->second.second,
           "separation must be 'fcfs' or 'eq4', got '" + it->second.first +
               "'");
  }
  if (auto it = kv.find("source"); it != kv.end()) {
    data.source = parse_source(it->second.first);
    if (!data.source)
      fail(it->second.second,
           "source must be 'table1' or 'oracle', got '" + it->second.first +
               "'");
  }
  return data;
}

ScenarioFileData load_scenario_file(const std::string& path) {
  return parse_scenario_text(read_file(path));
}

namespace {

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(v);
  while (std::getline(in, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

TickRange parse_range(int line, const std::string& key, const std::string& v) {
  size_t dots = v.find("..");
  if (dots == std::string::npos) {
    long long n = parse_int(line, key, v);
    return {n, n};
  }
  TickRange r{parse_int(line, key, trim(v.substr(0, dots))),
              parse_int(line, key, trim(v.substr(dots + 2)))};
  if (r.hi < r.lo) fail(line, "range '" + key + "' has hi < lo");
  return r;
}

}  // namespace

SweepSpec parse_sweep_text(const std::string& text) {
  auto kv = parse_kv(text);

  static const char* kKnown[] = {"delta", "theta_min", "theta_max",
                                 "dt",    "cost",      "e1",
                                 "d1",    "e2",        "d2",
                                 "sp",    "sp_source", "max_scenarios"};
  for (const auto& [key, value] : kv) {
    bool known = false;
    for (const char* k : kKnown) known |= key == k;
    if (!known) fail(value.second, "unknown key '" + key + "'");
  }

  SweepSpec spec;
  spec.dt_ticks = {2, 4};
  spec.models = {CostModel::quadratic(), CostModel::power_int(4)};

  auto intkey = [&](const char* k, long long& target) {
    if (auto it = kv.find(k); it != kv.end())
      target = parse_int(it->second.second, k, it->second.first);
  };
  intkey("delta", spec.delta_units);
  intkey("theta_min", spec.theta_min);
  intkey("theta_max", spec.theta_max);
  intkey("max_scenarios", spec.max_scenarios);

  if (auto it = kv.find("dt"); it != kv.end()) {
    spec.dt_ticks.clear();
    for (const std::string& tok : split_list(it->second.first))
      spec.dt_ticks.push_back(parse_int(it->second.second, "dt", tok));
    if (spec.dt_ticks.empty()) fail(it->second.second, "empty dt list");
  }
  if (auto it = kv.find("cost"); it != kv.end()) {
    spec.models.clear();
    for (const std::string& tok : split_list(it->second.first)) {
      auto m = CostModel::parse(tok);
      if (!m) fail(it->second.second, "unknown cost model '" + tok + "'");
      spec.models.push_back(*m);
    }
    if (spec.models.empty()) fail(it->second.second, "empty cost list");
  }

  auto rangekey = [&](const char* k, std::optional<TickRange>& target) {
    if (auto it = kv.find(k); it != kv.end())
      target = parse_range(it->second.second, k, it->second.first);
  };
  rangekey("e1", spec.e1);
  rangekey("d1", spec.d1);
  rangekey("e2", spec.e2);
  rangekey("d2", spec.d2);

  if (auto it = kv.find("sp"); it != kv.end()) {
    if (it->second.first == "on")
      spec.run_sp = true;
    else if (it->second.first == "off")
      spec.run_sp = false;
    else
      fail(it->second.second, "sp must be 'on' or 'off'");
  }
  if (auto it = kv.find("sp_source"); it != kv.end()) {
    auto src = parse_source(it->second.first);
    if (!src)
      fail(it->second.second,
           "sp_source must be 'table1' or 'oracle', got '" +
               it->second.first + "'");
    spec.sp_source = *src;
  }
  return spec;
}

SweepSpec load_sweep_file(const std::string& path) {
  return parse_sweep_text(read_file(path));
}

}  // namespace igame

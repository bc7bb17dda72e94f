#include "urnchain/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "urnchain/errors.hpp"

namespace urnchain {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& token, int line) {
  const std::string t = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError("expected a number, got '" + t + "'", line);
  }
  return value;
}

int parse_int(const std::string& token, int line) {
  const std::string t = trim(token);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError("expected an integer, got '" + t + "'", line);
  }
  return value;
}

struct PendingGroup {
  ScenarioConfig::Group group;
  int line = 0;
  bool has_size = false, has_spread = false, has_reinforcement = false;
};

void finish_group(std::vector<ScenarioConfig::Group>& groups, const PendingGroup& pending) {
  if (!pending.has_size) throw ParseError("group '" + pending.group.name + "' is missing 'size'", pending.line);
  if (!pending.has_spread) {
    throw ParseError("group '" + pending.group.name + "' is missing 'one_year_spread'", pending.line);
  }
  if (!pending.has_reinforcement) {
    throw ParseError("group '" + pending.group.name + "' is missing 'reinforcement'", pending.line);
  }
  if (pending.group.size < 1) throw ParseError("group sizes must be >= 1", pending.line);
  if (!(pending.group.one_year_spread >= 0.0)) {
    throw ParseError("one_year_spread must be >= 0", pending.line);
  }
  if (!(pending.group.reinforcement > 0.0)) {
    throw ParseError("reinforcement must be positive", pending.line);
  }
  groups.push_back(pending.group);
}

}  // namespace

std::vector<SimGroupConfig> ScenarioConfig::sim_groups(double reinforcement_override) const {
  std::vector<SimGroupConfig> out;
  out.reserve(groups.size());
  for (const Group& g : groups) {
    const double s = reinforcement_override > 0.0 ? reinforcement_override : g.reinforcement;
    out.push_back({g.name, g.size, SpreadCurve(g.one_year_spread, monthly_slope), s});
  }
  return out;
}

ScenarioConfig parse_scenario_config(std::istream& in) {
  ScenarioConfig config;
  bool has_slope = false, has_months = false, in_group = false;
  PendingGroup pending;

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text.back() != ']') throw ParseError("unterminated section header", line);
      const std::string section = trim(text.substr(1, text.size() - 2));
      if (section.rfind("group.", 0) != 0 || section.size() <= 6) {
        throw ParseError("expected a [group.<name>] section, got '[" + section + "]'", line);
      }
      if (in_group) finish_group(config.groups, pending);
      pending = PendingGroup{};
      pending.group.name = trim(section.substr(6));
      pending.line = line;
      for (const ScenarioConfig::Group& g : config.groups) {
        if (g.name == pending.group.name) {
          throw ParseError("duplicate group '" + pending.group.name + "'", line);
        }
      }
      in_group = true;
      continue;
    }

    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = text.substr(eq + 1);

    if (!in_group) {
      if (key == "monthly_slope") {
        config.monthly_slope = parse_double(value, line);
        if (!(config.monthly_slope >= 0.0)) throw ParseError("monthly_slope must be >= 0", line);
        has_slope = true;
      } else if (key == "months") {
        config.months = parse_int(value, line);
        if (config.months < 1) throw ParseError("months must be >= 1", line);
        has_months = true;
      } else {
        throw ParseError("unknown key '" + key + "' outside a group section", line);
      }
    } else {
      if (key == "size") {
        pending.group.size = parse_int(value, line);
        pending.has_size = true;
      } else if (key == "one_year_spread") {
        pending.group.one_year_spread = parse_double(value, line);
        pending.has_spread = true;
      } else if (key == "reinforcement") {
        pending.group.reinforcement = parse_double(value, line);
        pending.has_reinforcement = true;
      } else {
        throw ParseError("unknown group key '" + key + "'", line);
      }
    }
  }
  if (in_group) finish_group(config.groups, pending);

  if (!has_slope) throw ParseError("missing 'monthly_slope'");
  if (!has_months) throw ParseError("missing 'months'");
  if (config.groups.empty()) throw ParseError("scenario defines no groups");
  return config;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario config '" + path + "'");
  return parse_scenario_config(in);
}

DefaultSchedule parse_schedule_csv(std::istream& in) {
  std::string raw;
  int line = 0;
  if (!std::getline(in, raw)) throw ParseError("empty schedule file", 1);
  ++line;

  DefaultSchedule schedule;
  {
    std::stringstream header(trim(raw));
    std::string cell;
    if (!std::getline(header, cell, ',') || trim(cell) != "month") {
      throw ParseError("schedule header must start with 'month'", line);
    }
    while (std::getline(header, cell, ',')) {
      const std::string name = trim(cell);
      if (name.empty()) throw ParseError("empty group name in schedule header", line);
      schedule.group_names.push_back(name);
    }
    if (schedule.group_names.empty()) {
      throw ParseError("schedule header lists no groups", line);
    }
  }

  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty()) continue;
    std::stringstream row(text);
    std::string cell;
    if (!std::getline(row, cell, ',')) throw ParseError("missing month column", line);
    const int month = parse_int(cell, line);
    const int expected = static_cast<int>(schedule.counts.size()) + 1;
    if (month != expected) {
      throw ParseError("expected month " + std::to_string(expected) + ", got " +
                           std::to_string(month),
                       line);
    }
    std::vector<int> counts;
    counts.reserve(schedule.group_names.size());
    while (std::getline(row, cell, ',')) {
      const int c = parse_int(cell, line);
      if (c < 0) throw ParseError("default counts must be nonnegative", line);
      counts.push_back(c);
    }
    if (counts.size() != schedule.group_names.size()) {
      throw ParseError("expected " + std::to_string(schedule.group_names.size()) +
                           " group columns, got " + std::to_string(counts.size()),
                       line);
    }
    schedule.counts.push_back(std::move(counts));
  }
  return schedule;
}

DefaultSchedule load_schedule_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open schedule '" + path + "'");
  return parse_schedule_csv(in);
}

}  // namespace urnchain

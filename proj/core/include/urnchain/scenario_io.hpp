#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "urnchain/simulation.hpp"

namespace urnchain {

/// Parsed scenario file: ordered groups (best to worst), the shared monthly
/// spread slope, and the nominal horizon in months.
struct ScenarioConfig {
  struct Group {
    std::string name;
    int size = 0;
    double one_year_spread = 0.0;
    double reinforcement = 0.0;
  };

  std::vector<Group> groups;
  double monthly_slope = 0.0;
  int months = 0;

  /// Groups with their spread curves, ready for run_scenario. Overrides
  /// every group's reinforcement with `s` when s > 0.
  std::vector<SimGroupConfig> sim_groups(double reinforcement_override = 0.0) const;
};

/// Parse the line-oriented `key = value` scenario format:
///
///   monthly_slope = 0.0005
///   months = 12
///   [group.A]
///   size = 20
///   one_year_spread = 0.02
///   reinforcement = 0.05
///
/// `#` starts a comment. Groups appear best-to-worst. Throws ParseError
/// with a 1-based line number on malformed input.
ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig load_scenario_config(const std::string& path);

/// Parse a default schedule CSV: header `month,<group names...>`, one row
/// per month 1..T in order, nonnegative integer cells.
DefaultSchedule parse_schedule_csv(std::istream& in);
DefaultSchedule load_schedule_csv(const std::string& path);

}  // namespace urnchain

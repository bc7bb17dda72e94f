#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "urnchain/calibration.hpp"

namespace urnchain {

/// Running state of one reliability group during a scenario.
struct GroupState {
  std::string name;
  int initial_size = 0;   // n_i
  int survivors = 0;      // firms still alive at the start of the month
  double idio_mean = 0.0; // current posterior mean of D_i
  double reinforcement = 0.0;
};

/// Observed default counts, one row per month 1..T, one column per group in
/// reliability order.
struct DefaultSchedule {
  std::vector<std::string> group_names;
  std::vector<std::vector<int>> counts;  // counts[month-1][group]

  int months() const { return static_cast<int>(counts.size()); }
};

struct SimulationRow {
  int month = 0;
  std::string group;
  double spread = 0.0;
  int defaults = 0;
  double idio_mean = 0.0;
  double total_pd = 0.0;
};

struct SimulationResult {
  std::vector<SimulationRow> rows;

  /// Header `month,group,spread,defaults,idio_mean,total_pd`; reals with six
  /// decimal places, LF line endings.
  void write_csv(std::ostream& out) const;
};

/// Group definition for a scenario run: portfolio size, spread curve, urn
/// reinforcement.
struct SimGroupConfig {
  std::string name;
  int size = 0;
  SpreadCurve curve;
  double reinforcement = 0.0;
};

/// One month of reinforcement for one group:
///   m <- (m + s * defaults) / (1 + s * survivors_at_month_start)
/// with survivors decremented afterwards. Defaults occurring within the
/// month count in that month's exposure.
GroupState step_group(const GroupState& state, int defaults_this_month);

/// The monthly engine. Month 0 reports the spread-calibrated chain
/// (idio means from init_chain_from_spreads, totals 1 - exp(-gamma(0)));
/// each later month applies step_group per group with that month's observed
/// counts and recombines the total PDs through the chain. Pure function of
/// its inputs: reruns are bitwise identical.
SimulationResult run_scenario(const std::vector<SimGroupConfig>& groups,
                              const DefaultSchedule& schedule);

}  // namespace urnchain

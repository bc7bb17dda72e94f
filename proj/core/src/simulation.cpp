#include "urnchain/simulation.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "urnchain/errors.hpp"

namespace urnchain {

void SimulationResult::write_csv(std::ostream& out) const {
  out << "month,group,spread,defaults,idio_mean,total_pd\n";
  char buf[96];
  for (const SimulationRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.6f,%d,%.6f,%.6f", r.spread, r.defaults, r.idio_mean,
                  r.total_pd);
    out << r.month << ',' << r.group << ',' << buf << '\n';
  }
}

GroupState step_group(const GroupState& state, int defaults_this_month) {
  if (defaults_this_month < 0) throw std::invalid_argument("defaults must be nonnegative");
  if (defaults_this_month > state.survivors) {
    throw ModelError("inconsistent schedule: defaults in group '" + state.name +
                     "' exceed its survivors");
  }
  GroupState next = state;
  next.idio_mean = (state.idio_mean + state.reinforcement * defaults_this_month) /
                   (1.0 + state.reinforcement * state.survivors);
  next.survivors = state.survivors - defaults_this_month;
  return next;
}

namespace {

// Spread echoed in the result rows; display-only after month 0. Beyond the
// quote date the curve is flat at the one-year spread.
double echo_spread(const SpreadCurve& curve, int month) {
  return month <= 12 ? spread_at_month(curve, month) : curve.one_year_spread();
}

}  // namespace

SimulationResult run_scenario(const std::vector<SimGroupConfig>& groups,
                              const DefaultSchedule& schedule) {
  if (groups.empty()) throw std::invalid_argument("need at least one group");
  for (const SimGroupConfig& g : groups) {
    if (g.size < 1) throw std::invalid_argument("group sizes must be >= 1");
    if (!(g.reinforcement > 0.0)) throw std::invalid_argument("reinforcement must be positive");
  }
  if (!schedule.group_names.empty()) {
    if (schedule.group_names.size() != groups.size()) {
      throw ModelError("schedule has a different number of groups than the scenario");
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
      if (schedule.group_names[i] != groups[i].name) {
        throw ModelError("schedule group order does not match the scenario (expected '" +
                         groups[i].name + "', got '" + schedule.group_names[i] + "')");
      }
    }
  }

  std::vector<SpreadCurve> curves;
  curves.reserve(groups.size());
  for (const SimGroupConfig& g : groups) curves.push_back(g.curve);
  const IdioVector idio0 = init_chain_from_spreads(curves, 0);

  std::vector<GroupState> states(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    states[i] = GroupState{groups[i].name, groups[i].size, groups[i].size, idio0[i],
                           groups[i].reinforcement};
  }

  SimulationResult result;
  result.rows.reserve((static_cast<std::size_t>(schedule.months()) + 1) * groups.size());

  const TotalVector totals0 = compose_total(idio0);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    result.rows.push_back(
        {0, groups[i].name, echo_spread(groups[i].curve, 0), 0, idio0[i], totals0[i]});
  }

  for (int month = 1; month <= schedule.months(); ++month) {
    const std::vector<int>& row = schedule.counts[static_cast<std::size_t>(month - 1)];
    if (row.size() != groups.size()) {
      throw ModelError("schedule month " + std::to_string(month) +
                       " has the wrong number of groups");
    }
    std::vector<double> means(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
      states[i] = step_group(states[i], row[i]);
      means[i] = states[i].idio_mean;
    }
    const TotalVector totals = compose_total(IdioVector(means));
    for (std::size_t i = 0; i < groups.size(); ++i) {
      result.rows.push_back({month, groups[i].name, echo_spread(groups[i].curve, month), row[i],
                             states[i].idio_mean, totals[i]});
    }
  }
  return result;
}

}  // namespace urnchain

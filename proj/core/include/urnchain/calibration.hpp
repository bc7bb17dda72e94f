#pragma once

#include <vector>

#include "urnchain/urn_chain.hpp"

namespace urnchain {

/// Linear term structure of credit spreads: the quoted one-year spread plus
/// a fixed per-month decay toward it. Month 0 is "now", month 12 the quote.
class SpreadCurve {
 public:
  SpreadCurve(double one_year_spread, double monthly_slope);

  double one_year_spread() const { return one_year_spread_; }
  double monthly_slope() const { return monthly_slope_; }

 private:
  double one_year_spread_;
  double monthly_slope_;
};

/// one_year_spread + monthly_slope * (12 - month), for month in 0..12.
double spread_at_month(const SpreadCurve& curve, int month);

/// 1 - exp(-horizon_years * gamma), the standard spread-implied total
/// default probability over the horizon.
double spread_to_total_pd(double gamma, double horizon_years);

/// Initialize the chain from market spreads: per group,
/// total_i = 1 - exp(-spread_at_month(curve_i, month)), then invert the
/// chain. Curves must be ordered best-to-worst; decreasing totals break the
/// reliability ordering and are rejected. The one-year horizon factor is
/// used here regardless of month, matching the month-0 initialization of
/// run_scenario.
IdioVector init_chain_from_spreads(const std::vector<SpreadCurve>& curves, int month);

}  // namespace urnchain

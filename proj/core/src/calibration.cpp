#include "urnchain/calibration.hpp"

#include <cmath>
#include <stdexcept>

#include "urnchain/errors.hpp"

namespace urnchain {

SpreadCurve::SpreadCurve(double one_year_spread, double monthly_slope)
    : one_year_spread_(one_year_spread), monthly_slope_(monthly_slope) {
  if (!(one_year_spread >= 0.0)) throw std::invalid_argument("one-year spread must be >= 0");
  if (!(monthly_slope >= 0.0)) throw std::invalid_argument("monthly slope must be >= 0");
}

double spread_at_month(const SpreadCurve& curve, int month) {
  if (month < 0 || month > 12) throw std::invalid_argument("month must lie in 0..12");
  return curve.one_year_spread() + curve.monthly_slope() * (12 - month);
}

double spread_to_total_pd(double gamma, double horizon_years) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("spread must be >= 0");
  if (!(horizon_years > 0.0)) throw std::invalid_argument("horizon must be positive");
  return -std::expm1(-horizon_years * gamma);
}

IdioVector init_chain_from_spreads(const std::vector<SpreadCurve>& curves, int month) {
  if (curves.empty()) throw std::invalid_argument("need at least one spread curve");
  std::vector<double> totals(curves.size());
  for (std::size_t i = 0; i < curves.size(); ++i) {
    totals[i] = spread_to_total_pd(spread_at_month(curves[i], month), 1.0);
    if (i > 0 && totals[i] < totals[i - 1]) {
      throw ModelError(
          "ordering violation: spreads imply decreasing total default probabilities");
    }
  }
  return invert_chain(TotalVector(std::move(totals)));
}

}  // namespace urnchain

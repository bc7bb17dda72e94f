#include "urnchain/polya_urn.hpp"

#include <cmath>
#include <stdexcept>

namespace urnchain {

UrnState::UrnState(double white, double black, double reinforcement)
    : white_(white), black_(black), reinforcement_(reinforcement) {
  if (!(white >= 0.0)) throw std::invalid_argument("urn: white mass must be >= 0");
  if (!(black >= 0.0)) throw std::invalid_argument("urn: black mass must be >= 0");
  if (!(white + black > 0.0)) throw std::invalid_argument("urn: total mass must be positive");
  if (!(reinforcement > 0.0)) throw std::invalid_argument("urn: reinforcement must be positive");
}

BetaParams::BetaParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("Beta shapes must be positive");
  }
}

UrnState new_urn(double w0, double b0, double s) { return UrnState(w0, b0, s); }

double proportion_white(const UrnState& urn) {
  return urn.white() / (urn.white() + urn.black());
}

DrawOutcome draw(const UrnState& urn, Rng& rng) {
  const double p = proportion_white(urn);
  if (uniform01(rng) < p) {
    return {DrawColor::White,
            UrnState(urn.white() + urn.reinforcement(), urn.black(), urn.reinforcement())};
  }
  return {DrawColor::Black,
          UrnState(urn.white(), urn.black() + urn.reinforcement(), urn.reinforcement())};
}

BetaParams de_finetti_params(const UrnState& urn) {
  if (!(urn.white() > 0.0) || !(urn.black() > 0.0)) {
    throw std::invalid_argument(
        "de Finetti measure is a point mass for single-color urns; not representable as BetaParams");
  }
  return BetaParams(urn.white() / urn.reinforcement(), urn.black() / urn.reinforcement());
}

BetaParams posterior_params(double w0, double s, int defaults, int exposed) {
  if (!(w0 > 0.0 && w0 < 1.0)) throw std::invalid_argument("w0 must lie in (0,1)");
  if (!(s > 0.0)) throw std::invalid_argument("reinforcement must be positive");
  if (defaults < 0 || exposed < 0) throw std::invalid_argument("counts must be nonnegative");
  if (defaults > exposed) {
    throw std::invalid_argument("inconsistent observation: defaults exceed exposed");
  }
  return BetaParams(w0 / s + defaults, (1.0 - w0) / s + (exposed - defaults));
}

double posterior_mean(double w0, double s, int defaults, int exposed) {
  if (!(w0 > 0.0 && w0 < 1.0)) throw std::invalid_argument("w0 must lie in (0,1)");
  if (!(s > 0.0)) throw std::invalid_argument("reinforcement must be positive");
  if (defaults < 0 || exposed < 0) throw std::invalid_argument("counts must be nonnegative");
  if (defaults > exposed) {
    throw std::invalid_argument("inconsistent observation: defaults exceed exposed");
  }
  return (w0 + s * defaults) / (1.0 + s * exposed);
}

double ln_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("ln_beta requires positive arguments");
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double ln_choose(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("ln_choose requires 0 <= k <= n");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double beta_binomial_pmf(int n, int f, const BetaParams& prior) {
  if (n < 0) throw std::invalid_argument("portfolio size must be nonnegative");
  if (f < 0 || f > n) return 0.0;
  const double lp = ln_choose(n, f) +
                    ln_beta(prior.alpha() + f, prior.beta() + (n - f)) -
                    ln_beta(prior.alpha(), prior.beta());
  return std::exp(lp);
}

}  // namespace urnchain

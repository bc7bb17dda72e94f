#pragma once

#include "urnchain/random.hpp"

namespace urnchain {

/// Two-color reinforced urn. A White draw is a default event; every draw
/// returns the ball plus `reinforcement` extra mass of the same color.
class UrnState {
 public:
  /// Requires white >= 0, black >= 0, white + black > 0, reinforcement > 0.
  UrnState(double white, double black, double reinforcement);

  double white() const { return white_; }
  double black() const { return black_; }
  double reinforcement() const { return reinforcement_; }

 private:
  double white_;
  double black_;
  double reinforcement_;
};

/// Shape pair of a Beta law. Houses de Finetti measures and posteriors.
class BetaParams {
 public:
  /// Requires alpha > 0 and beta > 0.
  BetaParams(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double mean() const { return alpha_ / (alpha_ + beta_); }

 private:
  double alpha_;
  double beta_;
};

enum class DrawColor { White, Black };

struct DrawOutcome {
  DrawColor color;
  UrnState updated_urn;
};

UrnState new_urn(double w0, double b0, double s);

/// white / (white + black).
double proportion_white(const UrnState& urn);

/// One reinforced draw: White with probability proportion_white(urn); the
/// returned urn has the drawn color's mass increased by the reinforcement.
DrawOutcome draw(const UrnState& urn, Rng& rng);

/// The mixing Beta of the exchangeable draw sequence: (white/s, black/s).
/// Rejects zero white or black mass (the mixing law degenerates to a point
/// mass, which BetaParams cannot represent).
BetaParams de_finetti_params(const UrnState& urn);

/// Posterior Beta shapes after observing `defaults` among `exposed` firms,
/// starting from a unit-mass urn with white fraction w0 and reinforcement s:
/// (w0/s + defaults, (1-w0)/s + exposed - defaults).
BetaParams posterior_params(double w0, double s, int defaults, int exposed);

/// (w0 + s*defaults) / (1 + s*exposed); identical to
/// posterior_params(...).mean() by algebra.
double posterior_mean(double w0, double s, int defaults, int exposed);

/// ln B(a,b) = ln G(a) + ln G(b) - ln G(a+b). Rejects nonpositive arguments.
double ln_beta(double a, double b);

/// ln C(n,k) via log-gamma; requires 0 <= k <= n.
double ln_choose(int n, int k);

/// P[F = f] for F ~ BetaBinomial(n, prior), computed in log space.
/// f outside [0,n] has zero probability by contract, not an error.
double beta_binomial_pmf(int n, int f, const BetaParams& prior);

}  // namespace urnchain

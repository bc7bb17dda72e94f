#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "urnchain/pmf_table.hpp"
#include "urnchain/polya_urn.hpp"
#include "urnchain/random.hpp"

// Brute-force verifiers for the closed-form chain laws: direct Monte Carlo
// simulation and tensor-product quadrature. Nothing here calls the
// closed-form operations it is used to check; the Beta sampling and the
// log-gamma arithmetic are independent implementations.
namespace urnchain::oracle {

struct OracleReport {
  double estimate = 0.0;
  double standard_error = 0.0;
  long long replicates = 0;
  std::uint64_t seed = 0;
};

/// Mean and standard error (sample sd / sqrt(n)) of a Monte Carlo sample.
OracleReport summarize(std::span<const double> samples, std::uint64_t seed);

struct McJointPmf {
  PmfTable pmf;
  std::vector<double> std_errors;  // per cell, indexed like pmf.probs()
  long long replicates = 0;
  std::uint64_t seed = 0;

  /// Header `f_1,...,f_k,prob,std_error,replicates,seed`; same row order as
  /// the plain pmf CSV.
  void write_csv(std::ostream& out) const;
};

/// Empirical joint default-count frequencies: per replicate, draw the
/// idiosyncratic probabilities from their Beta priors, chain them into total
/// probabilities, then draw each group's defaults. Replicates are processed
/// in fixed-size blocks with per-block engines derived from the seed, so the
/// result is identical no matter how many threads share the work.
McJointPmf mc_joint_pmf(const std::vector<int>& sizes, const std::vector<BetaParams>& priors,
                        long long replicates, std::uint64_t seed, int threads = 1);

/// Tensor-product Gauss-Legendre evaluation of the joint default-count law
/// for up to three groups. Accuracy is validated by node doubling; shapes
/// >= 1 keep the integrand quadrature-friendly.
PmfTable quadrature_joint_pmf(const std::vector<int>& sizes,
                              const std::vector<BetaParams>& priors, int nodes_per_axis = 200);

/// Sup-norm distance between the empirical CDF of `samples` and `cdf`.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

/// I_x(a,b), the regularized incomplete beta function (continued fraction).
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of Beta(a,b) at x.
double beta_cdf(double x, double a, double b);

/// CDF of the beta-Stacy law BS(a,b;c) at x: I_{x/c}(a,b).
double beta_stacy_cdf(double x, double a, double b, double c);

/// Beta(a,b) variate by Cheng's rejection algorithms (BB for both shapes
/// above 1, BC otherwise). Independent of the gamma-ratio sampler used by
/// the chain code.
double sample_beta_local(double a, double b, Rng& rng);

/// Gauss-Legendre nodes and weights on (0,1).
void gauss_legendre01(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Adaptive Simpson integration of f over [lo, hi] to absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double tol);

}  // namespace urnchain::oracle

#pragma once

#include <cstddef>
#include <vector>

#include "urnchain/pmf_table.hpp"
#include "urnchain/polya_urn.hpp"
#include "urnchain/random.hpp"

namespace urnchain {

/// Idiosyncratic default probabilities D_i, one per group, listed in the
/// reliability order (best group first). Elements lie in [0,1].
class IdioVector {
 public:
  explicit IdioVector(std::vector<double> values);
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Total default probabilities D*_i. Nondecreasing in [0,1] by construction
/// of the chain; the constructor rejects anything else.
class TotalVector {
 public:
  explicit TotalVector(std::vector<double> values);
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Chain increments E_i = D*_i - D*_{i-1}; nonnegative, summing to <= 1.
class IncrementVector {
 public:
  explicit IncrementVector(std::vector<double> values);
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Chain recursion D*_1 = D_1, D*_i = D*_{i-1} + (1 - D*_{i-1}) D_i.
/// The last total equals 1 - prod(1 - D_i).
TotalVector compose_total(const IdioVector& idio);

/// Inverse of compose_total: D_i = (D*_i - D*_{i-1}) / (1 - D*_{i-1}).
/// A total equal to 1 before the last group leaves the chain below it
/// undefined and is rejected.
IdioVector invert_chain(const TotalVector& totals);

/// E_1 = D*_1, E_i = D*_i - D*_{i-1}. Partial sums reconstruct the totals.
IncrementVector increments(const TotalVector& totals);

struct ChainSample {
  IdioVector idio;
  TotalVector totals;
  IncrementVector incs;
};

/// Draw D_i independently from Beta(alpha_i, beta_i) and derive totals and
/// increments deterministically.
ChainSample sample_chain(const std::vector<BetaParams>& priors, Rng& rng);

/// Density of the beta-Stacy law BS(a,b;c) on (0,c):
/// x^{a-1} (c-x)^{b-1} / (B(a,b) c^{a+b-1}); zero outside (0,c).
/// Computed in log space. Rejects nonpositive a, b, or c.
double beta_stacy_pdf(double x, double a, double b, double c);

/// True iff |beta_i - sum_{j>i} alpha_j| <= tol for every i < k, the
/// condition under which the chain law collapses to a Generalized Dirichlet.
bool is_generalized_dirichlet(const std::vector<BetaParams>& priors, double tol);

inline constexpr std::size_t kDefaultCellCap = 10'000'000;

/// Exact joint law of the default counts (F_1, F_2) of the first two groups,
/// via the binomial moment expansion of the chain: with g_i = n_i - f_i,
///   P = C(n1,f1) C(n2,f2) sum_i C(f2,i)
///       * B(a1+f1+f2-i, b1+g1+g2+i)/B(a1,b1) * B(a2+i, b2+g2)/B(a2,b2).
/// The table sums to 1 and its f_1 marginal is the one-group beta-binomial.
PmfTable joint_pmf_two(int n1, int n2, const BetaParams& prior1, const BetaParams& prior2,
                       std::size_t cell_cap = kDefaultCellCap);

/// The same expansion applied recursively for any number of groups.
/// Coincides with joint_pmf_two for k = 2 and with beta_binomial_pmf for
/// k = 1. Tables larger than `cell_cap` cells raise ResourceError; such
/// problems route to the Monte Carlo oracle instead.
PmfTable joint_pmf_k(const std::vector<int>& sizes, const std::vector<BetaParams>& priors,
                     std::size_t cell_cap = kDefaultCellCap);

/// Diagnostic variant of the two-group law that reads the expansion's shape
/// arguments literally from the input parameters, downshifting the second
/// group's first shape by the expansion index (terms whose shape would be
/// nonpositive are skipped). Under that reading the table does not normalize,
/// which is why joint_pmf_two above uses the re-derived expansion instead;
/// this variant is retained to document the difference. (Shifting the inputs
/// to the count-inclusive posterior shapes first makes the same expansion
/// coincide with joint_pmf_two via the reindexing i -> f2 - i.)
PmfTable joint_pmf_two_diagnostic(int n1, int n2, const BetaParams& prior1,
                                  const BetaParams& prior2);

}  // namespace urnchain

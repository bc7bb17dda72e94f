#include "urnchain/urn_chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "urnchain/errors.hpp"

namespace urnchain {

namespace {

void require_unit_interval(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument(std::string(what) + " entries must lie in [0,1]");
    }
  }
}

}  // namespace

IdioVector::IdioVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("IdioVector requires at least one group");
  require_unit_interval(values_, "IdioVector");
}

TotalVector::TotalVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("TotalVector requires at least one group");
  require_unit_interval(values_, "TotalVector");
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] < values_[i - 1]) {
      throw ModelError("ordering violation: total default probabilities must be nondecreasing");
    }
  }
}

IncrementVector::IncrementVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("IncrementVector requires at least one group");
  double sum = 0.0;
  for (double x : values_) {
    if (!(x >= 0.0)) throw std::invalid_argument("IncrementVector entries must be nonnegative");
    sum += x;
  }
  if (sum > 1.0 + 1e-12) throw std::invalid_argument("IncrementVector must sum to <= 1");
}

TotalVector compose_total(const IdioVector& idio) {
  std::vector<double> totals(idio.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < idio.size(); ++i) {
    prev = prev + (1.0 - prev) * idio[i];
    totals[i] = prev;
  }
  return TotalVector(std::move(totals));
}

IdioVector invert_chain(const TotalVector& totals) {
  std::vector<double> idio(totals.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < totals.size(); ++i) {
    if (prev >= 1.0) {
      throw ModelError(
          "chain inversion undefined: a group above is already certain to default");
    }
    idio[i] = (totals[i] - prev) / (1.0 - prev);
    prev = totals[i];
  }
  return IdioVector(std::move(idio));
}

IncrementVector increments(const TotalVector& totals) {
  std::vector<double> incs(totals.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < totals.size(); ++i) {
    incs[i] = totals[i] - prev;
    prev = totals[i];
  }
  return IncrementVector(std::move(incs));
}

ChainSample sample_chain(const std::vector<BetaParams>& priors, Rng& rng) {
  if (priors.empty()) throw std::invalid_argument("sample_chain requires at least one group");
  std::vector<double> d(priors.size());
  for (std::size_t i = 0; i < priors.size(); ++i) {
    d[i] = sample_beta(priors[i].alpha(), priors[i].beta(), rng);
  }
  IdioVector idio(std::move(d));
  TotalVector totals = compose_total(idio);
  IncrementVector incs = increments(totals);
  return {std::move(idio), std::move(totals), std::move(incs)};
}

double beta_stacy_pdf(double x, double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
    throw std::invalid_argument("beta_stacy_pdf requires positive a, b, c");
  }
  if (!(x > 0.0) || !(x < c)) return 0.0;
  const double lp = (a - 1.0) * std::log(x) + (b - 1.0) * std::log(c - x) -
                    (a + b - 1.0) * std::log(c) - ln_beta(a, b);
  return std::exp(lp);
}

bool is_generalized_dirichlet(const std::vector<BetaParams>& priors, double tol) {
  if (priors.empty()) throw std::invalid_argument("need at least one group");
  double suffix = 0.0;
  for (std::size_t i = priors.size(); i-- > 0;) {
    if (i + 1 < priors.size() && std::abs(priors[i].beta() - suffix) > tol) return false;
    suffix += priors[i].alpha();
  }
  return true;
}

namespace {

std::size_t checked_cell_count(const std::vector<int>& sizes, std::size_t cap) {
  std::size_t cells = 1;
  for (int n : sizes) {
    if (n < 0) throw std::invalid_argument("group sizes must be nonnegative");
    const std::size_t base = static_cast<std::size_t>(n) + 1;
    if (cells > cap / base) {
      throw ResourceError(
          "joint pmf table exceeds the cell cap; use the Monte Carlo oracle for this size");
    }
    cells *= base;
  }
  if (cells > cap) {
    throw ResourceError(
        "joint pmf table exceeds the cell cap; use the Monte Carlo oracle for this size");
  }
  return cells;
}

// log of the expansion stage E(j; F, G): the part of the cell expectation
// still involving groups 1..j+1, with default exponent F and survival
// exponent G pushed down from the groups above. Summation order within each
// stage is fixed (ascending expansion index), so results are reproducible
// bit for bit no matter how cells are scheduled.
double log_stage(const std::vector<BetaParams>& priors, const std::vector<int>& f,
                 const std::vector<int>& g, std::size_t j, int F, int G) {
  const BetaParams& p = priors[j];
  const double ln_b0 = ln_beta(p.alpha(), p.beta());
  if (j == 0) return ln_beta(p.alpha() + F, p.beta() + G) - ln_b0;
  std::vector<double> terms(static_cast<std::size_t>(F) + 1);
  for (int i = 0; i <= F; ++i) {
    terms[static_cast<std::size_t>(i)] =
        ln_choose(F, i) + ln_beta(p.alpha() + i, p.beta() + G) - ln_b0 +
        log_stage(priors, f, g, j - 1, f[j - 1] + F - i, g[j - 1] + G + i);
  }
  const double m = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(m)) return m;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - m);
  return m + std::log(sum);
}

double cell_probability(const std::vector<int>& sizes, const std::vector<BetaParams>& priors,
                        const std::vector<int>& f, const std::vector<int>& g) {
  const std::size_t k = sizes.size();
  double lp = 0.0;
  for (std::size_t j = 0; j < k; ++j) lp += ln_choose(sizes[j], f[j]);
  lp += log_stage(priors, f, g, k - 1, f[k - 1], g[k - 1]);
  const double p = std::exp(lp);
  // cells below 1e-300 become exact zeros so normalization checks are not
  // polluted by denormals
  return p < 1e-300 ? 0.0 : p;
}

}  // namespace

PmfTable joint_pmf_k(const std::vector<int>& sizes, const std::vector<BetaParams>& priors,
                     std::size_t cell_cap) {
  if (sizes.empty() || sizes.size() != priors.size()) {
    throw std::invalid_argument("need one prior per group size");
  }
  checked_cell_count(sizes, cell_cap);
  PmfTable table(sizes);
  const std::size_t k = sizes.size();
  std::vector<int> f(k, 0), g(k, 0);
  for (std::size_t flat = 0; flat < table.cell_count(); ++flat) {
    table.tuple_at(flat, f);
    for (std::size_t j = 0; j < k; ++j) g[j] = sizes[j] - f[j];
    table.probs()[flat] = cell_probability(sizes, priors, f, g);
  }
  return table;
}

PmfTable joint_pmf_two(int n1, int n2, const BetaParams& prior1, const BetaParams& prior2,
                       std::size_t cell_cap) {
  return joint_pmf_k({n1, n2}, {prior1, prior2}, cell_cap);
}

PmfTable joint_pmf_two_diagnostic(int n1, int n2, const BetaParams& prior1,
                                  const BetaParams& prior2) {
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("group sizes must be nonnegative");
  PmfTable table({n1, n2});
  const double ln_b1 = ln_beta(prior1.alpha(), prior1.beta());
  const double ln_b2 = ln_beta(prior2.alpha(), prior2.beta());
  for (int f1 = 0; f1 <= n1; ++f1) {
    for (int f2 = 0; f2 <= n2; ++f2) {
      double sum = 0.0;
      for (int i = 0; i <= f2; ++i) {
        // the downshifted shape leaves the Beta domain for i >= alpha_2;
        // such terms are skipped, which is exactly why this variant fails
        // to normalize
        if (!(prior2.alpha() - i > 0.0)) continue;
        sum += std::exp(ln_choose(f2, i) +
                        ln_beta(prior1.alpha() + i, prior1.beta() + (n2 - i)) - ln_b1 +
                        ln_beta(prior2.alpha() - i, prior2.beta()) - ln_b2);
      }
      const int fs[2] = {f1, f2};
      table.set(fs, std::exp(ln_choose(n1, f1) + ln_choose(n2, f2)) * sum);
    }
  }
  return table;
}

}  // namespace urnchain

#include "urnchain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "urnchain/errors.hpp"

namespace urnchain::oracle {

OracleReport summarize(std::span<const double> samples, std::uint64_t seed) {
  if (samples.empty()) throw std::invalid_argument("empty sample");
  const double n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {mean, sd / std::sqrt(n), static_cast<long long>(samples.size()), seed};
}

void McJointPmf::write_csv(std::ostream& out) const {
  for (std::size_t j = 0; j < pmf.sizes().size(); ++j) out << "f_" << (j + 1) << ',';
  out << "prob,std_error,replicates,seed\n";
  std::vector<int> f(pmf.sizes().size(), 0);
  char buf[96];
  for (std::size_t flat = 0; flat < pmf.cell_count(); ++flat) {
    pmf.tuple_at(flat, f);
    for (int c : f) out << c << ',';
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", pmf.probs()[flat], std_errors[flat]);
    out << buf << ',' << replicates << ',' << seed << '\n';
  }
}

double sample_beta_local(double aa, double bb, Rng& rng) {
  if (!(aa > 0.0) || !(bb > 0.0)) throw std::invalid_argument("beta shapes must be positive");
  constexpr double kExpMax = 708.0;
  constexpr double kLn4 = 1.3862944;

  if (std::min(aa, bb) > 1.0) {
    // Cheng's BB rejection scheme.
    const double a = std::min(aa, bb);
    const double b = std::max(aa, bb);
    const double alpha = a + b;
    const double beta = std::sqrt((alpha - 2.0) / (2.0 * a * b - alpha));
    const double gamma = a + 1.0 / beta;
    double w = 0.0;
    while (true) {
      const double u1 = uniform01(rng);
      const double u2 = uniform01(rng);
      if (u1 <= 0.0 || u1 >= 1.0) continue;
      const double v = beta * std::log(u1 / (1.0 - u1));
      w = v <= kExpMax ? a * std::exp(v) : std::numeric_limits<double>::max();
      const double z = u1 * u1 * u2;
      const double r = gamma * v - kLn4;
      const double s = a + r - w;
      if (s + 2.609438 >= 5.0 * z) break;
      const double t = std::log(z);
      if (s >= t) break;
      if (r + alpha * std::log(alpha / (b + w)) >= t) break;
    }
    return aa != a ? b / (b + w) : w / (b + w);
  }

  // Johnk's transformation for min(aa,bb) <= 1: accept (U^(1/a), V^(1/b))
  // when the pair lands under the simplex; the normalized first coordinate
  // is Beta(a,b). Acceptance degrades for large opposite shapes, which is
  // acceptable for an oracle-side sampler.
  while (true) {
    double u = uniform01(rng);
    double v = uniform01(rng);
    while (u == 0.0) u = uniform01(rng);
    while (v == 0.0) v = uniform01(rng);
    const double lx = std::log(u) / aa;
    const double ly = std::log(v) / bb;
    const double m = std::max(lx, ly);
    // work on the log scale so tiny powers do not flush to zero
    const double sum = std::exp(lx - m) + std::exp(ly - m);
    if (m + std::log(sum) <= 0.0) {
      return std::exp(lx - m) / sum;
    }
  }
}

McJointPmf mc_joint_pmf(const std::vector<int>& sizes, const std::vector<BetaParams>& priors,
                        long long replicates, std::uint64_t seed, int threads) {
  if (sizes.empty() || sizes.size() != priors.size()) {
    throw std::invalid_argument("need one prior per group size");
  }
  for (int n : sizes) {
    if (n < 0) throw std::invalid_argument("group sizes must be nonnegative");
  }
  if (replicates < 10'000) throw std::invalid_argument("need at least 1e4 replicates");

  PmfTable table(sizes);
  const std::size_t cells = table.cell_count();
  constexpr long long kBlock = 1 << 16;
  const long long nblocks = (replicates + kBlock - 1) / kBlock;
  const int nthreads = std::max(1, static_cast<int>(std::min<long long>(threads, nblocks)));

  // Per-thread integer tallies; integer sums are exact, so the reduction is
  // independent of the block-to-thread assignment.
  std::vector<std::vector<long long>> tallies(static_cast<std::size_t>(nthreads),
                                              std::vector<long long>(cells, 0));

  auto worker = [&](int tid) {
    std::vector<long long>& tally = tallies[static_cast<std::size_t>(tid)];
    const std::size_t k = sizes.size();
    std::vector<int> f(k);
    for (long long blk = tid; blk < nblocks; blk += nthreads) {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(blk)));
      const long long lo = blk * kBlock;
      const long long hi = std::min(replicates, lo + kBlock);
      for (long long rep = lo; rep < hi; ++rep) {
        double survival = 1.0;
        for (std::size_t j = 0; j < k; ++j) {
          const double d = sample_beta_local(priors[j].alpha(), priors[j].beta(), rng);
          survival *= 1.0 - d;
          const double total_pd = 1.0 - survival;
          int count = 0;
          for (int firm = 0; firm < sizes[j]; ++firm) {
            if (uniform01(rng) < total_pd) ++count;
          }
          f[j] = count;
        }
        ++tally[table.index(f)];
      }
    }
  };

  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int tid = 0; tid < nthreads; ++tid) pool.emplace_back(worker, tid);
    for (std::thread& t : pool) t.join();
  }

  McJointPmf out{std::move(table), std::vector<double>(cells, 0.0), replicates, seed};
  const double r = static_cast<double>(replicates);
  for (std::size_t c = 0; c < cells; ++c) {
    long long count = 0;
    for (const auto& tally : tallies) count += tally[c];
    const double p = static_cast<double>(count) / r;
    out.pmf.probs()[c] = p;
    out.std_errors[c] = std::sqrt(p * (1.0 - p) / (r - 1.0));
  }
  return out;
}

namespace {

double lgamma_sum_log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// ln C(n, f) for f = 0..n.
std::vector<double> log_binom_coeffs(int n) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int f = 0; f <= n; ++f) {
    c[static_cast<std::size_t>(f)] =
        std::lgamma(n + 1.0) - std::lgamma(f + 1.0) - std::lgamma(n - f + 1.0);
  }
  return c;
}

// v[f] = C(n,f) p^f (1-p)^{n-f}, p strictly inside (0,1).
void binom_row(const std::vector<double>& lnc, int n, double p, std::vector<double>& v) {
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  for (int f = 0; f <= n; ++f) {
    v[static_cast<std::size_t>(f)] =
        std::exp(lnc[static_cast<std::size_t>(f)] + f * lp + (n - f) * lq);
  }
}

}  // namespace

PmfTable quadrature_joint_pmf(const std::vector<int>& sizes,
                              const std::vector<BetaParams>& priors, int nodes_per_axis) {
  const std::size_t k = sizes.size();
  if (k == 0 || k != priors.size()) throw std::invalid_argument("need one prior per group size");
  if (k > 3) throw ResourceError("quadrature oracle supports at most three groups");
  if (nodes_per_axis < 2) throw std::invalid_argument("need at least two nodes per axis");
  for (int n : sizes) {
    if (n < 0) throw std::invalid_argument("group sizes must be nonnegative");
  }

  std::vector<double> x, wt;
  gauss_legendre01(nodes_per_axis, x, wt);
  const std::size_t nn = x.size();

  // Per-axis weight * Beta density at each node.
  std::vector<std::vector<double>> wpdf(k, std::vector<double>(nn));
  for (std::size_t j = 0; j < k; ++j) {
    const double a = priors[j].alpha(), b = priors[j].beta();
    const double lnb = lgamma_sum_log_beta(a, b);
    for (std::size_t i = 0; i < nn; ++i) {
      wpdf[j][i] =
          wt[i] * std::exp((a - 1.0) * std::log(x[i]) + (b - 1.0) * std::log1p(-x[i]) - lnb);
    }
  }
  std::vector<std::vector<double>> lnc(k);
  for (std::size_t j = 0; j < k; ++j) lnc[j] = log_binom_coeffs(sizes[j]);

  PmfTable table(sizes);
  if (k == 1) {
    std::vector<double> row(static_cast<std::size_t>(sizes[0]) + 1);
    for (std::size_t i = 0; i < nn; ++i) {
      binom_row(lnc[0], sizes[0], x[i], row);
      for (std::size_t f = 0; f < row.size(); ++f) table.probs()[f] += wpdf[0][i] * row[f];
    }
    return table;
  }

  const std::size_t d1 = static_cast<std::size_t>(sizes[0]) + 1;
  const std::size_t d2 = static_cast<std::size_t>(sizes[1]) + 1;
  std::vector<double> row1(d1), row2(d2);
  if (k == 2) {
    std::vector<double> acc(d2);
    for (std::size_t i1 = 0; i1 < nn; ++i1) {
      const double t1 = x[i1];
      binom_row(lnc[0], sizes[0], t1, row1);
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t i2 = 0; i2 < nn; ++i2) {
        const double t2 = t1 + (1.0 - t1) * x[i2];
        binom_row(lnc[1], sizes[1], t2, row2);
        for (std::size_t f2 = 0; f2 < d2; ++f2) acc[f2] += wpdf[1][i2] * row2[f2];
      }
      for (std::size_t f1 = 0; f1 < d1; ++f1) {
        const double w1 = wpdf[0][i1] * row1[f1];
        for (std::size_t f2 = 0; f2 < d2; ++f2) table.probs()[f1 * d2 + f2] += w1 * acc[f2];
      }
    }
    return table;
  }

  const std::size_t d3 = static_cast<std::size_t>(sizes[2]) + 1;
  std::vector<double> row3(d3), inner(d3), mid(d2 * d3);
  for (std::size_t i1 = 0; i1 < nn; ++i1) {
    const double t1 = x[i1];
    binom_row(lnc[0], sizes[0], t1, row1);
    std::fill(mid.begin(), mid.end(), 0.0);
    for (std::size_t i2 = 0; i2 < nn; ++i2) {
      const double t2 = t1 + (1.0 - t1) * x[i2];
      binom_row(lnc[1], sizes[1], t2, row2);
      std::fill(inner.begin(), inner.end(), 0.0);
      for (std::size_t i3 = 0; i3 < nn; ++i3) {
        const double t3 = t2 + (1.0 - t2) * x[i3];
        binom_row(lnc[2], sizes[2], t3, row3);
        for (std::size_t f3 = 0; f3 < d3; ++f3) inner[f3] += wpdf[2][i3] * row3[f3];
      }
      for (std::size_t f2 = 0; f2 < d2; ++f2) {
        const double w2 = wpdf[1][i2] * row2[f2];
        for (std::size_t f3 = 0; f3 < d3; ++f3) mid[f2 * d3 + f3] += w2 * inner[f3];
      }
    }
    for (std::size_t f1 = 0; f1 < d1; ++f1) {
      const double w1 = wpdf[0][i1] * row1[f1];
      for (std::size_t m = 0; m < mid.size(); ++m) table.probs()[f1 * mid.size() + m] += w1 * mid[m];
    }
  }
  return table;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double fx = cdf(samples[i]);
    d = std::max(d, fx - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - fx);
  }
  return d;
}

namespace {

double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("shapes must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double beta_cdf(double x, double a, double b) { return regularized_incomplete_beta(a, b, x); }

double beta_stacy_cdf(double x, double a, double b, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scale must be positive");
  return regularized_incomplete_beta(a, b, x / c);
}

void gauss_legendre01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("need at least one node");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration on P_n from the Chebyshev initial guess.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    // map from (-1,1) to (0,1)
    nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - z);
    nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + z);
    const double w = 1.0 / ((1.0 - z * z) * pp * pp);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fb, double fm, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  if (!(hi > lo)) throw std::invalid_argument("integration bounds must satisfy lo < hi");
  const double m = 0.5 * (lo + hi);
  const double fa = f(lo), fb = f(hi), fm = f(m);
  const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, lo, hi, fa, fb, fm, whole, tol, 60);
}

}  // namespace urnchain::oracle

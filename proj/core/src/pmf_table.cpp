#include "urnchain/pmf_table.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "urnchain/errors.hpp"

namespace urnchain {

PmfTable::PmfTable(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("PmfTable requires at least one group");
  std::size_t cells = 1;
  for (int n : sizes_) {
    if (n < 0) throw std::invalid_argument("group sizes must be nonnegative");
    cells *= static_cast<std::size_t>(n) + 1;
  }
  probs_.assign(cells, 0.0);
}

std::size_t PmfTable::index(std::span<const int> f) const {
  if (f.size() != sizes_.size()) throw std::invalid_argument("tuple arity mismatch");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < sizes_.size(); ++j) {
    if (f[j] < 0 || f[j] > sizes_[j]) throw std::out_of_range("count outside [0, n_i]");
    idx = idx * (static_cast<std::size_t>(sizes_[j]) + 1) + static_cast<std::size_t>(f[j]);
  }
  return idx;
}

void PmfTable::tuple_at(std::size_t flat, std::span<int> f) const {
  for (std::size_t j = sizes_.size(); j-- > 0;) {
    const std::size_t base = static_cast<std::size_t>(sizes_[j]) + 1;
    f[j] = static_cast<int>(flat % base);
    flat /= base;
  }
}

double PmfTable::total() const {
  double t = 0.0;
  for (double p : probs_) t += p;
  return t;
}

void PmfTable::write_csv(std::ostream& out) const {
  for (std::size_t j = 0; j < sizes_.size(); ++j) {
    out << "f_" << (j + 1) << ',';
  }
  out << "prob\n";
  std::vector<int> f(sizes_.size(), 0);
  char buf[40];
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    tuple_at(flat, f);
    for (int c : f) out << c << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", probs_[flat]);
    out << buf << '\n';
  }
}

}  // namespace urnchain

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace urnchain {

/// Probability table over default-count tuples (f_1,...,f_k), 0 <= f_i <= n_i.
/// Cells are stored flat in lexicographic tuple order, last index fastest.
class PmfTable {
 public:
  /// Zero-filled table over the given group sizes.
  explicit PmfTable(std::vector<int> sizes);

  const std::vector<int>& sizes() const { return sizes_; }
  std::size_t cell_count() const { return probs_.size(); }

  double at(std::span<const int> f) const { return probs_[index(f)]; }
  void set(std::span<const int> f, double p) { probs_[index(f)] = p; }

  std::vector<double>& probs() { return probs_; }
  const std::vector<double>& probs() const { return probs_; }

  /// Flat index of a count tuple.
  std::size_t index(std::span<const int> f) const;
  /// Inverse of index(): tuple stored into `f`.
  void tuple_at(std::size_t flat, std::span<int> f) const;

  double total() const;

  /// Header `f_1,...,f_k,prob`, rows in lexicographic tuple order,
  /// probabilities with 17 significant digits, LF line endings.
  void write_csv(std::ostream& out) const;

 private:
  std::vector<int> sizes_;
  std::vector<double> probs_;
};

}  // namespace urnchain

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tec/tensor.hpp"

namespace tec {

/// Real vector kept in descending order.
class SortedVec {
 public:
  /// Throws ArgumentError unless `entries` is already descending.
  explicit SortedVec(std::vector<double> entries);
  static SortedVec sorted(std::vector<double> entries);
  static SortedVec from(const RealVector& v);

  const std::vector<double>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  bool all_positive() const { return positive_; }

 private:
  std::vector<double> entries_;
  bool positive_ = false;
};

/// Outcome of a majorization predicate. `failing_k` is the first partial
/// length k (1-based) whose inequality fails; the total-equality failure of
/// the strong variants reports k = n.
struct MajorizationResult {
  bool holds = true;
  std::optional<std::size_t> failing_k;

  explicit operator bool() const { return holds; }
};

/// Default tolerance 1e-9 * (1 + max |entry|) over both vectors.
double default_majorization_tol(const SortedVec& y, const SortedVec& x);

/// x is weakly majorized by y: every top-k partial sum of x <= that of y.
MajorizationResult weak_majorizes(const SortedVec& y, const SortedVec& x, std::optional<double> tol = {});
/// Weak majorization plus equal totals.
MajorizationResult majorizes(const SortedVec& y, const SortedVec& x, std::optional<double> tol = {});
/// Partial products compared through partial sums of logs; positive inputs only.
MajorizationResult weak_log_majorizes(const SortedVec& y, const SortedVec& x, std::optional<double> tol = {});
MajorizationResult log_majorizes(const SortedVec& y, const SortedVec& x, std::optional<double> tol = {});

struct KyFanSumReport {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

/// || |sum_i C_i|^s ||_(k) <= m^(s-1) sum_i || |C_i|^s ||_(k).
KyFanSumReport check_kyfan_sum_inequality(std::span<const Tensor> tensors, double s, std::size_t k);

}  // namespace tec

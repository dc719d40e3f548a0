#include "tec/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tec/errors.hpp"
#include "tec/norms.hpp"

namespace tec {

SortedVec::SortedVec(std::vector<double> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i] > entries_[i - 1]) throw ArgumentError("SortedVec entries must be descending");
  }
  for (double v : entries_)
    if (!std::isfinite(v)) throw ArgumentError("SortedVec entries must be finite");
  positive_ = std::all_of(entries_.begin(), entries_.end(), [](double v) { return v > 0; });
}

SortedVec SortedVec::sorted(std::vector<double> entries) {
  std::sort(entries.begin(), entries.end(), std::greater<>());
  return SortedVec(std::move(entries));
}

SortedVec SortedVec::from(const RealVector& v) { return sorted(std::vector<double>(v.data(), v.data() + v.size())); }

double default_majorization_tol(const SortedVec& y, const SortedVec& x) {
  double m = 0;
  for (double v : y.entries()) m = std::max(m, std::abs(v));
  for (double v : x.entries()) m = std::max(m, std::abs(v));
  return 1e-9 * (1 + m);
}

namespace {

void require_same_length(const SortedVec& y, const SortedVec& x) {
  if (y.size() != x.size()) {
    throw ArgumentError("majorization compares vectors of equal length, got " + std::to_string(y.size()) + " and " +
                        std::to_string(x.size()));
  }
}

MajorizationResult partial_sums(const std::vector<double>& y, const std::vector<double>& x, double tol, bool equal_total) {
  double sy = 0, sx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    if (sx > sy + tol) return {false, k + 1};
  }
  if (equal_total && std::abs(sx - sy) > tol) return {false, x.size()};
  return {};
}

SortedVec logs(const SortedVec& v) {
  if (!v.all_positive()) throw DomainError("log majorization needs positive entries");
  std::vector<double> out;
  out.reserve(v.size());
  for (double e : v.entries()) out.push_back(std::log(e));
  return SortedVec(std::move(out));
}

}  // namespace

MajorizationResult weak_majorizes(const SortedVec& y, const SortedVec& x, std::optional<double> tol) {
  require_same_length(y, x);
  return partial_sums(y.entries(), x.entries(), tol.value_or(default_majorization_tol(y, x)), false);
}

MajorizationResult majorizes(const SortedVec& y, const SortedVec& x, std::optional<double> tol) {
  require_same_length(y, x);
  return partial_sums(y.entries(), x.entries(), tol.value_or(default_majorization_tol(y, x)), true);
}

MajorizationResult weak_log_majorizes(const SortedVec& y, const SortedVec& x, std::optional<double> tol) {
  require_same_length(y, x);
  const SortedVec ly = logs(y), lx = logs(x);
  return partial_sums(ly.entries(), lx.entries(), tol.value_or(default_majorization_tol(ly, lx)), false);
}

MajorizationResult log_majorizes(const SortedVec& y, const SortedVec& x, std::optional<double> tol) {
  require_same_length(y, x);
  const SortedVec ly = logs(y), lx = logs(x);
  return partial_sums(ly.entries(), lx.entries(), tol.value_or(default_majorization_tol(ly, lx)), true);
}

KyFanSumReport check_kyfan_sum_inequality(std::span<const Tensor> tensors, double s, std::size_t k) {
  if (tensors.empty()) throw ArgumentError("need at least one tensor");
  if (!(s >= 1)) throw ArgumentError("power s must be >= 1");
  const auto power = [s](double x) { return std::pow(std::max(x, 0.0), s); };

  Tensor sum = tensors[0];
  for (std::size_t i = 1; i < tensors.size(); ++i) sum = sum + tensors[i];  // ShapeError on mismatch

  KyFanSumReport report;
  report.lhs = ky_fan_norm(spectral_map(abs_tensor(sum), power).tensor(), k);
  double acc = 0;
  for (const Tensor& c : tensors) acc += ky_fan_norm(spectral_map(abs_tensor(c), power).tensor(), k);
  report.rhs = std::pow(static_cast<double>(tensors.size()), s - 1) * acc;
  report.holds = report.lhs <= report.rhs + 1e-9 * (1 + report.rhs);
  return report;
}

}  // namespace tec

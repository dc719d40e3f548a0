#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tec/quadrature.hpp"
#include "tec/tensor.hpp"

namespace tec {

/// Finitely supported probability measure over Hermitian tensors.
class DiscreteMeasure {
 public:
  /// Weights must be positive and sum to 1 within 1e-12; all atoms share
  /// one square shape.
  DiscreteMeasure(std::vector<HermitianTensor> atoms, std::vector<double> weights);

  const std::vector<HermitianTensor>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<HermitianTensor> atoms_;
  std::vector<double> weights_;
};

/// Which averaged majorization statement to verify.
enum class AverageMode {
  weak,      // lambda(C) weakly majorized by the average spectrum
  strong,    // ... with equal totals
  weak_log,  // weak log-majorization against the geometric average
  log,       // ... with equal products
};

const char* to_string(AverageMode mode);

struct AverageReport {
  bool premise_holds = false;
  bool conclusion_holds = false;
  double lhs = 0;         // ||f(C)||_(k)
  double rhs_linear = 0;  // sum_tau nu(tau) ||f(D_tau)||_(k)
  double rhs_log = 0;     // exp sum_tau nu(tau) log ||f(D_tau)||_(k); log modes only

  /// Premise true but conclusion false: a counterexample.
  bool violation() const { return premise_holds && !conclusion_holds; }
};

/// Evaluates premise and conclusion of the averaged majorization theorems
/// on a discrete measure. Weak and strong modes compare the conclusion in
/// linear form; log modes require both the log form and the linear form.
/// Preconditions on f (convexity, monotonicity) are the caller's.
AverageReport verify_discrete_average_majorization(const HermitianTensor& c, const DiscreteMeasure& d,
                                                   const RealFunction& f, std::size_t k, AverageMode mode);

/// ||f(exp(sum_i log C_i))||_(k) for positive C_i.
double golden_thompson_lhs(const RealFunction& f, std::span<const HermitianTensor> cs, std::size_t k);

/// Truncated evaluation of an interpolation integral against beta_0.
struct InterpolationValue {
  double value = 0;             // quadrature result on [-T, T]
  double truncation_bound = 0;  // bound on the omitted tail, in units of value
  double quadrature_error = 0;  // |Q_n - Q_{n/2}| plus a round-off floor
  double truncation = 0;
  std::size_t node_count = 0;

  /// Upper end of the interval that contains the untruncated integral.
  double upper() const { return value + truncation_bound + quadrature_error; }
};

/// ||f(|prod_i C_i^{1 + i t}|)||_(k), the integrand of both rhs forms.
double interpolation_integrand(const RealFunction& f, std::span<const Spectrum> spectra, std::size_t k, double t);

/// exp integral log ||f(|prod C_i^{1+it}|)||_(k) beta_0(t) dt.
InterpolationValue golden_thompson_rhs_log(const RealFunction& f, std::span<const HermitianTensor> cs, std::size_t k,
                                           const QuadratureSpec& quad, std::size_t workers = 1);

/// integral ||g(|prod C_i^{1+it}|)||_(k) beta_0(t) dt.
InterpolationValue golden_thompson_rhs_linear(const RealFunction& g, std::span<const HermitianTensor> cs,
                                              std::size_t k, const QuadratureSpec& quad, std::size_t workers = 1);

/// Spectral norm of (prod_k exp(L_k / n))^n - exp(sum_k L_k).
double lie_trotter_error(std::span<const HermitianTensor> ls, std::size_t n);

/// 2 exp(2||L_1|| + 2||L_2||) / n, the two-term error bound.
double lie_trotter_bound(const HermitianTensor& l1, const HermitianTensor& l2, std::size_t n);

struct ConvexityCheck {
  bool convex = true;
  double worst_second_difference = 0;  // most negative scaled second difference
};

/// Samples x -> log f(e^x) on [x_lo, x_hi] and reports detected non-convexity.
ConvexityCheck check_log_convexity(const RealFunction& f, double x_lo, double x_hi, std::size_t samples = 257);
/// Same for x -> g(e^x).
ConvexityCheck check_exp_convexity(const RealFunction& g, double x_lo, double x_hi, std::size_t samples = 257);

}  // namespace tec
